#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gdist/groups.hpp"

namespace gdist {

struct BallOptions {
  /// Enumeration fails with MemoryCapExceeded rather than exceed this.
  std::size_t max_elements = 10'000'000;
  /// Worker threads for frontier expansion. Results do not depend on it.
  unsigned threads = 1;
};

/// A Cayley ball built breadth first. Each element's parent is chosen so that
/// following parents spells its shortlex-least geodesic word; within a layer
/// entries are ordered by that word. Both choices are independent of the
/// thread count.
class BallIndex {
 public:
  struct Entry {
    Element element;
    std::uint32_t distance = 0;
    std::int64_t parent = -1;
    Letter letter{};
  };

  explicit BallIndex(MarkedGroup group, BallOptions options = {});

  BallIndex(const BallIndex&) = delete;
  BallIndex& operator=(const BallIndex&) = delete;
  BallIndex(BallIndex&&) = default;
  BallIndex& operator=(BallIndex&&) = default;

  void extend_to(std::size_t radius);

  const MarkedGroup& group() const { return group_; }
  std::size_t radius() const { return sphere_sizes_.size() - 1; }
  std::size_t size() const { return entries_.size(); }
  /// The newest layer is empty, so the ball already holds the whole group.
  bool exhausted() const { return sphere_sizes_.back() == 0; }
  const std::vector<std::size_t>& sphere_sizes() const { return sphere_sizes_; }
  /// Every neighbour of the outermost layer is already present, i.e. the
  /// ball is the whole group. Checked without growing the ball.
  bool closed() const;

  std::optional<std::size_t> find(const Element& e) const;
  std::optional<std::size_t> distance_of(const Element& e) const;
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  /// Shortlex-least geodesic word for entry i.
  Word witness(std::size_t i) const;

  std::size_t layer_begin(std::size_t d) const { return layer_offsets_.at(d); }
  std::size_t layer_end(std::size_t d) const { return layer_offsets_.at(d) + sphere_sizes_.at(d); }

 private:
  void grow_one_layer();

  MarkedGroup group_;
  BallOptions options_;
  std::deque<Entry> entries_;
  std::unordered_map<std::string_view, std::uint32_t> lookup_;
  std::vector<std::size_t> sphere_sizes_;
  std::vector<std::size_t> layer_offsets_;
};

/// Word metric backed by a ball that grows on demand. Safe for concurrent use.
class WordMetric {
 public:
  explicit WordMetric(MarkedGroup group, BallOptions options = {});

  const MarkedGroup& group() const { return group_; }

  std::optional<std::size_t> try_length(const Element& g, std::size_t cap) const;
  /// Throws ExceedsCap if ||g|| > cap.
  std::size_t length(const Element& g, std::size_t cap) const;
  std::size_t distance(const Element& a, const Element& b, std::size_t cap) const {
    return length(group_.multiply(group_.invert(a), b), cap);
  }
  /// Shortlex-least geodesic word for g. Throws ExceedsCap if ||g|| > cap.
  Word geodesic(const Element& g, std::size_t cap) const;
  void ensure_radius(std::size_t radius) const;
  std::size_t radius() const;

 private:
  std::optional<std::size_t> locate(const Element& g, std::size_t cap) const;

  MarkedGroup group_;
  mutable std::shared_mutex mutex_;
  mutable BallIndex ball_;
};

BallIndex ball(const MarkedGroup& g, std::size_t n, BallOptions options = {});

/// Exact ||g|| by breadth-first search; throws ExceedsCap if it exceeds cap.
std::size_t word_length_of(const Element& g, const MarkedGroup& group, std::size_t cap, BallOptions options = {});
std::size_t distance(const Element& g, const Element& h, const MarkedGroup& group, std::size_t cap,
                     BallOptions options = {});
Word geodesic_shortlex(const Element& g, const MarkedGroup& group, std::size_t cap, BallOptions options = {});
/// Sphere sizes for radii 0..n.
std::vector<std::size_t> growth_series(const MarkedGroup& g, std::size_t n, BallOptions options = {});

/// CSV with columns key,distance,witness_word; rows by distance then key.
std::string ball_csv(const BallIndex& b);

struct InjectivityReport {
  std::size_t radius = 0;
  std::size_t elements_checked = 0;
  bool injective_on_ball = true;
  /// The source ball holds the whole (finite) source group.
  bool exact = false;
  std::optional<std::pair<Word, Word>> collision;
};

/// Maps the radius-n source ball through h and looks for two elements with
/// the same image.
InjectivityReport injectivity_on_ball(const MarkedHomomorphism& h, std::size_t n, BallOptions options = {});

}  // namespace gdist
