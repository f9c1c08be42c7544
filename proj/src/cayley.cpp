#include "gdist/cayley.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "gdist/errors.hpp"

namespace gdist {

namespace {

struct Candidate {
  Element element;
  std::uint32_t parent;
  Letter letter;
};

constexpr std::size_t kParallelThreshold = 2048;

}  // namespace

BallIndex::BallIndex(MarkedGroup group, BallOptions options) : group_(std::move(group)), options_(options) {
  if (options_.max_elements < 1) throw InvalidArgument("element cap must be positive");
  entries_.push_back(Entry{group_.identity(), 0, -1, Letter{}});
  lookup_.emplace(entries_.back().element.key(), 0);
  sphere_sizes_.push_back(1);
  layer_offsets_.push_back(0);
}

void BallIndex::extend_to(std::size_t radius) {
  while (this->radius() < radius) grow_one_layer();
}

void BallIndex::grow_one_layer() {
  const std::size_t d = radius();
  const std::size_t begin = layer_begin(d);
  const std::size_t end = layer_end(d);
  const std::vector<Letter> letters = group_.alphabet().letters();

  // Expansion only reads the index; chunks are contiguous in layer order, so
  // concatenating their outputs lists candidates by (parent rank, letter).
  auto expand = [&](std::size_t from, std::size_t to, std::vector<Candidate>& out) {
    for (std::size_t i = from; i < to; ++i) {
      const Element& base = entries_[i].element;
      for (Letter l : letters) {
        Element next = group_.multiply(base, group_.letter_element(l));
        if (lookup_.find(next.key()) == lookup_.end())
          out.push_back(Candidate{std::move(next), static_cast<std::uint32_t>(i), l});
      }
    }
  };

  const std::size_t count = end - begin;
  const std::size_t workers =
      (options_.threads > 1 && count >= kParallelThreshold) ? std::min<std::size_t>(options_.threads, count) : 1;
  std::vector<std::vector<Candidate>> chunks(workers);
  if (workers == 1) {
    expand(begin, end, chunks[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t from = begin + count * w / workers;
      std::size_t to = begin + count * (w + 1) / workers;
      pool.emplace_back(expand, from, to, std::ref(chunks[w]));
    }
    for (auto& t : pool) t.join();
  }

  // First occurrence wins: that is the shortlex-least (parent word, letter).
  const std::size_t new_begin = entries_.size();
  for (auto& chunk : chunks) {
    for (auto& c : chunk) {
      if (lookup_.find(c.element.key()) != lookup_.end()) continue;
      if (entries_.size() >= options_.max_elements)
        throw MemoryCapExceeded("Cayley ball of '" + group_.name() + "' exceeds " +
                                std::to_string(options_.max_elements) + " elements at radius " +
                                std::to_string(d + 1));
      entries_.push_back(Entry{std::move(c.element), static_cast<std::uint32_t>(d + 1), c.parent, c.letter});
      lookup_.emplace(entries_.back().element.key(), static_cast<std::uint32_t>(entries_.size() - 1));
    }
  }
  layer_offsets_.push_back(new_begin);
  sphere_sizes_.push_back(entries_.size() - new_begin);
}

std::optional<std::size_t> BallIndex::find(const Element& e) const {
  auto it = lookup_.find(e.key());
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> BallIndex::distance_of(const Element& e) const {
  auto i = find(e);
  if (!i) return std::nullopt;
  return entries_[*i].distance;
}

bool BallIndex::closed() const {
  if (exhausted()) return true;
  const std::vector<Letter> letters = group_.alphabet().letters();
  for (std::size_t i = layer_begin(radius()); i < layer_end(radius()); ++i) {
    for (Letter l : letters) {
      if (!find(group_.multiply(entries_[i].element, group_.letter_element(l)))) return false;
    }
  }
  return true;
}

Word BallIndex::witness(std::size_t i) const {
  std::vector<Letter> letters;
  for (std::int64_t cur = static_cast<std::int64_t>(i); entries_[cur].parent >= 0; cur = entries_[cur].parent)
    letters.push_back(entries_[cur].letter);
  std::reverse(letters.begin(), letters.end());
  return Word(std::move(letters));
}

WordMetric::WordMetric(MarkedGroup group, BallOptions options) : group_(group), ball_(std::move(group), options) {}

std::optional<std::size_t> WordMetric::locate(const Element& g, std::size_t cap) const {
  {
    std::shared_lock lock(mutex_);
    if (auto i = ball_.find(g)) {
      if (ball_.entry(*i).distance <= cap) return i;
      return std::nullopt;
    }
    if (ball_.radius() >= cap || ball_.exhausted()) return std::nullopt;
  }
  std::unique_lock lock(mutex_);
  for (;;) {
    if (auto i = ball_.find(g)) {
      if (ball_.entry(*i).distance <= cap) return i;
      return std::nullopt;
    }
    if (ball_.radius() >= cap || ball_.exhausted()) return std::nullopt;
    ball_.extend_to(ball_.radius() + 1);
  }
}

std::optional<std::size_t> WordMetric::try_length(const Element& g, std::size_t cap) const {
  auto i = locate(g, cap);
  if (!i) return std::nullopt;
  std::shared_lock lock(mutex_);
  return ball_.entry(*i).distance;
}

std::size_t WordMetric::length(const Element& g, std::size_t cap) const {
  if (auto d = try_length(g, cap)) return *d;
  throw ExceedsCap("word length of " + group_.describe(g) + " in '" + group_.name() + "' exceeds " +
                   std::to_string(cap));
}

Word WordMetric::geodesic(const Element& g, std::size_t cap) const {
  auto i = locate(g, cap);
  if (!i)
    throw ExceedsCap("no geodesic of length <= " + std::to_string(cap) + " for " + group_.describe(g));
  std::shared_lock lock(mutex_);
  return ball_.witness(*i);
}

void WordMetric::ensure_radius(std::size_t radius) const {
  std::unique_lock lock(mutex_);
  ball_.extend_to(radius);
}

std::size_t WordMetric::radius() const {
  std::shared_lock lock(mutex_);
  return ball_.radius();
}

BallIndex ball(const MarkedGroup& g, std::size_t n, BallOptions options) {
  BallIndex b(g, options);
  b.extend_to(n);
  return b;
}

std::size_t word_length_of(const Element& g, const MarkedGroup& group, std::size_t cap, BallOptions options) {
  return WordMetric(group, options).length(g, cap);
}

std::size_t distance(const Element& g, const Element& h, const MarkedGroup& group, std::size_t cap,
                     BallOptions options) {
  return word_length_of(group.multiply(group.invert(g), h), group, cap, options);
}

Word geodesic_shortlex(const Element& g, const MarkedGroup& group, std::size_t cap, BallOptions options) {
  return WordMetric(group, options).geodesic(g, cap);
}

std::vector<std::size_t> growth_series(const MarkedGroup& g, std::size_t n, BallOptions options) {
  return ball(g, n, options).sphere_sizes();
}

std::string ball_csv(const BallIndex& b) {
  std::vector<std::size_t> order(b.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto& ex = b.entry(x);
    const auto& ey = b.entry(y);
    if (ex.distance != ey.distance) return ex.distance < ey.distance;
    return ex.element < ey.element;
  });
  std::string out = "key,distance,witness_word\n";
  for (std::size_t i : order) {
    out += key_hex(b.entry(i).element);
    out += ',';
    out += std::to_string(b.entry(i).distance);
    out += ',';
    out += b.group().format(b.witness(i));
    out += '\n';
  }
  return out;
}

InjectivityReport injectivity_on_ball(const MarkedHomomorphism& h, std::size_t n, BallOptions options) {
  BallIndex source = ball(h.source, n, options);
  InjectivityReport report;
  report.radius = n;
  report.exact = source.closed();
  std::unordered_map<std::string, std::size_t> images;
  for (std::size_t i = 0; i < source.size(); ++i) {
    Word w = source.witness(i);
    Element image = h.map(w);
    ++report.elements_checked;
    auto [it, inserted] = images.emplace(image.key(), i);
    if (!inserted) {
      report.injective_on_ball = false;
      report.collision = std::make_pair(source.witness(it->second), std::move(w));
      break;
    }
  }
  return report;
}

}  // namespace gdist
