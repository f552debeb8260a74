#include "symne/graph.hh"

#include <algorithm>
#include <deque>
#include <limits>

namespace symne
{
  namespace
  {
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    // Iterative Tarjan; returns the component of each node (none when not
    // visited).
    std::vector<std::uint32_t>
    tarjan(const explicit_graph& g, std::span<const std::uint32_t> roots)
    {
      const std::size_t n = g.size();
      std::vector<std::uint32_t> index(n, none), low(n, 0), comp(n, none);
      std::vector<std::uint32_t> stack;
      std::vector<bool> on_stack(n, false);
      std::uint32_t counter = 0, comps = 0;
      struct frame
      {
        std::uint32_t node;
        std::size_t edge;
      };
      std::vector<frame> call;

      for (std::uint32_t root: roots)
        {
          if (index[root] != none)
            continue;
          call.push_back({root, 0});
          index[root] = low[root] = counter++;
          stack.push_back(root);
          on_stack[root] = true;
          while (!call.empty())
            {
              frame& f = call.back();
              const auto& out = g.succ[f.node];
              if (f.edge < out.size())
                {
                  std::uint32_t w = out[f.edge++];
                  if (index[w] == none)
                    {
                      index[w] = low[w] = counter++;
                      stack.push_back(w);
                      on_stack[w] = true;
                      call.push_back({w, 0});
                    }
                  else if (on_stack[w])
                    low[f.node] = std::min(low[f.node], index[w]);
                  continue;
                }
              std::uint32_t v = f.node;
              call.pop_back();
              if (!call.empty())
                low[call.back().node] = std::min(low[call.back().node],
                                                 low[v]);
              if (low[v] == index[v])
                {
                  std::uint32_t w;
                  do
                    {
                      w = stack.back();
                      stack.pop_back();
                      on_stack[w] = false;
                      comp[w] = comps;
                    }
                  while (w != v);
                  ++comps;
                }
            }
        }
      return comp;
    }
  }

  std::optional<node_lasso>
  find_accepting_lasso(const explicit_graph& g,
                       std::span<const std::uint32_t> initial)
  {
    const std::size_t n = g.size();
    std::vector<std::uint32_t> parent(n, none);
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> order;
    std::deque<std::uint32_t> queue;
    for (std::uint32_t s: initial)
      if (!seen[s])
        {
          seen[s] = true;
          queue.push_back(s);
        }
    while (!queue.empty())
      {
        std::uint32_t v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (std::uint32_t w: g.succ[v])
          if (!seen[w])
            {
              seen[w] = true;
              parent[w] = v;
              queue.push_back(w);
            }
      }

    std::vector<std::uint32_t> comp = tarjan(g, initial);
    std::vector<std::size_t> comp_size;
    for (std::uint32_t v: order)
      {
        if (comp[v] >= comp_size.size())
          comp_size.resize(comp[v] + 1, 0);
        ++comp_size[comp[v]];
      }
    auto on_cycle = [&](std::uint32_t v) {
      if (comp_size[comp[v]] > 1)
        return true;
      const auto& out = g.succ[v];
      return std::find(out.begin(), out.end(), v) != out.end();
    };

    std::uint32_t target = none;
    for (std::uint32_t v: order)
      if (g.accepting[v] && on_cycle(v))
        {
          target = v;
          break;
        }
    if (target == none)
      return std::nullopt;

    node_lasso out;
    for (std::uint32_t v = parent[target]; v != none; v = parent[v])
      out.prefix.push_back(v);
    std::reverse(out.prefix.begin(), out.prefix.end());

    // Shortest way back to target inside its component.
    std::vector<std::uint32_t> back(n, none);
    std::vector<bool> hit(n, false);
    queue.assign({target});
    std::uint32_t last = none;
    while (!queue.empty() && last == none)
      {
        std::uint32_t v = queue.front();
        queue.pop_front();
        for (std::uint32_t w: g.succ[v])
          {
            if (w == target)
              {
                last = v;
                break;
              }
            if (!hit[w] && comp[w] == comp[target])
              {
                hit[w] = true;
                back[w] = v;
                queue.push_back(w);
              }
          }
      }
    for (std::uint32_t v = last; v != target; v = back[v])
      out.cycle.push_back(v);
    out.cycle.push_back(target);
    std::reverse(out.cycle.begin(), out.cycle.end());
    return out;
  }

  std::string dot_escape(std::string_view s)
  {
    std::string out;
    for (char c: s)
      {
        if (c == '"' || c == '\\')
          out += '\\';
        out += c;
      }
    return out;
  }
}
