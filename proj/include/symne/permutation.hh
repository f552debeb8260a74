#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symne/arena.hh"

namespace symne
{
  /// Permutation of the player indices [n], stored as its image array.
  class permutation
  {
  public:
    permutation() = default;
    explicit permutation(std::vector<player_id> image)
      : image_(std::move(image))
    {
    }

    static permutation identity(std::size_t n);
    /// Exchanges a and b, fixing everything else.
    static permutation swap(std::size_t n, player_id a, player_id b);

    std::size_t size() const noexcept
    {
      return image_.size();
    }

    player_id operator()(player_id k) const
    {
      return image_.at(k);
    }

    const std::vector<player_id>& image() const noexcept
    {
      return image_;
    }

    bool is_bijection() const;
    bool is_identity() const;
    permutation inverse() const;

    /// "[1,2,0]"
    std::string to_string() const;

    bool operator==(const permutation&) const = default;

  private:
    std::vector<player_id> image_;
  };

  /// (p o q)(k) = p(q(k)).
  permutation compose(const permutation& p, const permutation& q);
}
