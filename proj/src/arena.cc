#include "symne/arena.hh"

#include <algorithm>

namespace symne
{
  std::size_t
  configuration_hash::operator()(const configuration& t) const noexcept
  {
    std::size_t h = t.size();
    for (state_id s: t)
      h = h * 1000003u ^ (s + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }

  namespace
  {
    std::optional<std::uint32_t>
    find_sorted(const std::vector<std::string>& names, std::string_view name)
    {
      auto it = std::lower_bound(names.begin(), names.end(), name);
      if (it == names.end() || *it != name)
        return std::nullopt;
      return static_cast<std::uint32_t>(it - names.begin());
    }
  }

  std::optional<state_id> arena::find_state(std::string_view name) const
  {
    return find_sorted(states, name);
  }

  std::optional<action_id> arena::find_action(std::string_view name) const
  {
    auto it = std::find(actions.begin(), actions.end(), name);
    if (it == actions.end())
      return std::nullopt;
    return static_cast<action_id>(it - actions.begin());
  }

  std::string arena::format(const configuration& t) const
  {
    std::string out = "(";
    for (std::size_t k = 0; k < t.size(); ++k)
      {
        if (k)
          out += ',';
        out += states.at(t[k]);
      }
    out += ')';
    return out;
  }
}
