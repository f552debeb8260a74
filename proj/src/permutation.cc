#include "symne/permutation.hh"

#include <numeric>

#include "symne/error.hh"

namespace symne
{
  permutation permutation::identity(std::size_t n)
  {
    std::vector<player_id> image(n);
    std::iota(image.begin(), image.end(), player_id{0});
    return permutation(std::move(image));
  }

  permutation permutation::swap(std::size_t n, player_id a, player_id b)
  {
    auto p = identity(n);
    std::swap(p.image_.at(a), p.image_.at(b));
    return p;
  }

  bool permutation::is_bijection() const
  {
    std::vector<bool> seen(image_.size(), false);
    for (player_id k: image_)
      {
        if (k >= image_.size() || seen[k])
          return false;
        seen[k] = true;
      }
    return true;
  }

  bool permutation::is_identity() const
  {
    for (std::size_t k = 0; k < image_.size(); ++k)
      if (image_[k] != k)
        return false;
    return true;
  }

  permutation permutation::inverse() const
  {
    std::vector<player_id> inv(image_.size());
    for (std::size_t k = 0; k < image_.size(); ++k)
      inv.at(image_[k]) = static_cast<player_id>(k);
    return permutation(std::move(inv));
  }

  std::string permutation::to_string() const
  {
    std::string out = "[";
    for (std::size_t k = 0; k < image_.size(); ++k)
      {
        if (k)
          out += ',';
        out += std::to_string(image_[k]);
      }
    return out + "]";
  }

  permutation compose(const permutation& p, const permutation& q)
  {
    if (p.size() != q.size())
      throw error(errc::length_mismatch, "composing permutations of sizes "
                  + std::to_string(p.size()) + " and "
                  + std::to_string(q.size()));
    std::vector<player_id> image(p.size());
    for (std::size_t k = 0; k < image.size(); ++k)
      image[k] = p(q(static_cast<player_id>(k)));
    return permutation(std::move(image));
  }
}
