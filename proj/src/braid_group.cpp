#include <sstream>

#include "encoding.hpp"
#include "gdist/errors.hpp"
#include "gdist/groups.hpp"

// Permutation braids: perm[p] is the final position of the strand that starts
// at position p, and the braid A * B has permutation p -> B[A[p]].

namespace gdist {

namespace {

using Permutation = BraidGroup::Permutation;

Permutation inverse_of(const Permutation& a) {
  Permutation inv(a.size());
  for (std::size_t p = 0; p < a.size(); ++p) inv[a[p]] = static_cast<std::uint8_t>(p);
  return inv;
}

bool is_identity_perm(const Permutation& a) {
  for (std::size_t p = 0; p < a.size(); ++p)
    if (a[p] != p) return false;
  return true;
}

bool is_delta_perm(const Permutation& a) {
  for (std::size_t p = 0; p < a.size(); ++p)
    if (a[p] != a.size() - 1 - p) return false;
  return true;
}

// Conjugation by Delta: Delta^-1 A Delta.
Permutation tau(const Permutation& a) {
  const std::size_t n = a.size();
  Permutation out(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = static_cast<std::uint8_t>(n - 1 - a[n - 1 - p]);
  return out;
}

// The simple braid D with A * D = Delta.
Permutation right_complement(const Permutation& a) {
  const std::size_t n = a.size();
  Permutation inv = inverse_of(a);
  Permutation out(n);
  for (std::size_t q = 0; q < n; ++q) out[q] = static_cast<std::uint8_t>(n - 1 - inv[q]);
  return out;
}

// i is in the starting set of A when A = s_i A' with A' positive.
bool starts_with(const Permutation& a, std::size_t i) { return a[i] > a[i + 1]; }

// i is in the finishing set of A when A = A' s_i with A' positive.
bool finishes_with(const Permutation& a_inverse, std::size_t i) { return a_inverse[i] > a_inverse[i + 1]; }

std::uint8_t swap_at(std::uint8_t v, std::size_t i) {
  if (v == i) return static_cast<std::uint8_t>(i + 1);
  if (v == i + 1) return static_cast<std::uint8_t>(i);
  return v;
}

// Makes (a, b) left-weighted by moving crossings from the front of b to the
// back of a. Returns true if anything moved.
bool left_weight(Permutation& a, Permutation& b) {
  const std::size_t n = a.size();
  bool changed = false;
  Permutation a_inv = inverse_of(a);
  for (;;) {
    std::size_t i = 0;
    while (i + 1 < n && !(starts_with(b, i) && !finishes_with(a_inv, i))) ++i;
    if (i + 1 >= n) return changed;
    for (auto& v : a) v = swap_at(v, i);  // a <- a s_i
    Permutation shifted(n);               // b <- s_i^-1 b
    for (std::size_t p = 0; p < n; ++p) shifted[p] = b[swap_at(static_cast<std::uint8_t>(p), i)];
    b = std::move(shifted);
    a_inv = inverse_of(a);
    changed = true;
  }
}

}  // namespace

BraidGroup::BraidGroup(std::uint32_t strands) : n_(strands) {
  if (n_ < 2 || n_ > 255) throw InvalidArgument("braid group needs between 2 and 255 strands");
}

Element BraidGroup::encode(const NormalForm& nf) const {
  detail::ByteWriter w;
  w.i64(nf.inf);
  w.u32(static_cast<std::uint32_t>(nf.factors.size()));
  for (const auto& f : nf.factors) {
    w.raw(std::string_view(reinterpret_cast<const char*>(f.data()), f.size()));
  }
  return Element(w.take());
}

BraidGroup::NormalForm BraidGroup::normal_form(const Element& e) const {
  detail::ByteReader r(e.key());
  NormalForm nf;
  nf.inf = r.i64();
  std::uint32_t count = r.u32();
  nf.factors.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    auto bytes = r.raw(n_);
    nf.factors.emplace_back(bytes.begin(), bytes.end());
  }
  if (!r.done()) throw InvalidArgument("not a braid group element");
  return nf;
}

Element BraidGroup::sigma(std::uint32_t i) const {
  if (i < 1 || i >= n_) throw InvalidArgument("braid generator index out of range");
  Permutation p(n_);
  for (std::size_t k = 0; k < n_; ++k) p[k] = static_cast<std::uint8_t>(k);
  std::swap(p[i - 1], p[i]);
  NormalForm nf;
  nf.factors.push_back(std::move(p));
  return encode(nf);
}

Element BraidGroup::delta() const {
  NormalForm nf;
  nf.inf = 1;
  return encode(nf);
}

void BraidGroup::canonicalize(NormalForm& nf) const {
  std::size_t leading = 0;
  while (leading < nf.factors.size() && is_delta_perm(nf.factors[leading])) ++leading;
  if (leading) {
    nf.inf = detail::checked_add(nf.inf, static_cast<std::int64_t>(leading));
    nf.factors.erase(nf.factors.begin(), nf.factors.begin() + static_cast<std::ptrdiff_t>(leading));
  }
  while (!nf.factors.empty() && is_identity_perm(nf.factors.back())) nf.factors.pop_back();
}

void BraidGroup::right_multiply_delta_power(NormalForm& nf, std::int64_t power) const {
  nf.inf = detail::checked_add(nf.inf, power);
  if (power % 2 != 0) {
    for (auto& f : nf.factors) f = tau(f);
  }
}

void BraidGroup::right_multiply_simple(NormalForm& nf, const Permutation& simple) const {
  if (is_identity_perm(simple)) return;
  nf.factors.push_back(simple);
  for (std::size_t j = nf.factors.size() - 1; j > 0; --j) {
    if (!left_weight(nf.factors[j - 1], nf.factors[j])) break;
  }
  canonicalize(nf);
}

void BraidGroup::right_multiply_simple_inverse(NormalForm& nf, const Permutation& simple) const {
  // A^-1 = (A^-1 Delta) Delta^-1, and A^-1 Delta is simple.
  right_multiply_simple(nf, right_complement(simple));
  right_multiply_delta_power(nf, -1);
}

Element BraidGroup::multiply(const Element& a, const Element& b) const {
  NormalForm x = normal_form(a);
  const NormalForm y = normal_form(b);
  right_multiply_delta_power(x, y.inf);
  for (const auto& f : y.factors) right_multiply_simple(x, f);
  return encode(x);
}

Element BraidGroup::invert(const Element& a) const {
  const NormalForm x = normal_form(a);
  NormalForm out;
  for (auto it = x.factors.rbegin(); it != x.factors.rend(); ++it) right_multiply_simple_inverse(out, *it);
  right_multiply_delta_power(out, detail::checked_neg(x.inf));
  return encode(out);
}

std::string BraidGroup::describe(const Element& a) const {
  const NormalForm nf = normal_form(a);
  std::ostringstream out;
  out << "D^" << nf.inf;
  for (const auto& f : nf.factors) {
    out << " [";
    for (std::size_t p = 0; p < f.size(); ++p) out << (p ? " " : "") << static_cast<int>(f[p]);
    out << ']';
  }
  return out.str();
}

}  // namespace gdist
