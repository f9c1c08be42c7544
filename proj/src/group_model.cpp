#include <algorithm>
#include <sstream>

#include "encoding.hpp"
#include "gdist/errors.hpp"
#include "gdist/groups.hpp"

namespace gdist {

namespace detail {

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (unsigned char c : bytes) {
    out += kDigits[c >> 4];
    out += kDigits[c & 15];
  }
  return out;
}

}  // namespace detail

std::string key_hex(const Element& e) {
  if (e.key().empty()) return "-";
  return detail::to_hex(e.key());
}

Element GroupModel::power(const Element& a, const mpz_class& k) const {
  Element base = k < 0 ? invert(a) : a;
  mpz_class e = abs(k);
  Element result = identity();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

// ---------------------------------------------------------------- TableGroup

TableGroup::TableGroup(std::vector<std::vector<std::uint32_t>> table, std::vector<std::string> element_names)
    : table_(std::move(table)), names_(std::move(element_names)) {
  const std::size_t n = table_.size();
  if (n == 0) throw InvalidArgument("table group needs at least one element");
  if (!names_.empty() && names_.size() != n) throw InvalidArgument("one name per table element required");
  for (const auto& row : table_) {
    if (row.size() != n) throw InvalidArgument("multiplication table must be square");
    for (auto v : row) {
      if (v >= n) throw InvalidArgument("multiplication table entry out of range");
    }
  }
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("multiplication table has no identity");
  inverse_.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    auto it = std::find(table_[x].begin(), table_[x].end(), identity_);
    if (it == table_[x].end()) throw InvalidArgument("table element without inverse");
    auto y = static_cast<std::uint32_t>(it - table_[x].begin());
    if (table_[y][x] != identity_) throw InvalidArgument("table inverses are not two-sided");
    inverse_[x] = y;
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw InvalidArgument("multiplication table is not associative");
}

std::shared_ptr<TableGroup> TableGroup::cyclic(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return std::make_shared<TableGroup>(std::move(t));
}

std::shared_ptr<TableGroup> TableGroup::klein_four() {
  std::vector<std::vector<std::uint32_t>> t(4, std::vector<std::uint32_t>(4));
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = 0; j < 4; ++j) t[i][j] = i ^ j;
  return std::make_shared<TableGroup>(std::move(t), std::vector<std::string>{"(0,0)", "(1,0)", "(0,1)", "(1,1)"});
}

Element TableGroup::element(std::uint32_t index) const {
  if (index >= table_.size()) throw InvalidArgument("table element index out of range");
  detail::ByteWriter w;
  w.u32(index);
  return Element(w.take());
}

std::uint32_t TableGroup::index(const Element& e) const {
  detail::ByteReader r(e.key());
  auto i = r.u32();
  if (i >= table_.size() || !r.done()) throw InvalidArgument("not a table group element");
  return i;
}

Element TableGroup::multiply(const Element& a, const Element& b) const {
  return element(table_[index(a)][index(b)]);
}

Element TableGroup::invert(const Element& a) const { return element(inverse_[index(a)]); }

std::string TableGroup::describe(const Element& a) const {
  auto i = index(a);
  return names_.empty() ? "e" + std::to_string(i) : names_[i];
}

// ---------------------------------------------------------- IntegerMatrixGroup

namespace {

mpz_class bareiss_determinant(IntegerMatrixGroup::Matrix m, std::size_t n) {
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap * n + k] == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[swap * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      }
    }
    prev = m[k * n + k];
  }
  return sign * m[n * n - 1];
}

}  // namespace

IntegerMatrixGroup::IntegerMatrixGroup(std::size_t dimension) : n_(dimension) {
  if (n_ == 0 || n_ > 64) throw InvalidArgument("matrix dimension must be in [1, 64]");
}

Element IntegerMatrixGroup::encode(const Matrix& m) const {
  detail::ByteWriter w;
  for (const auto& v : m) w.mpz(v);
  return Element(w.take());
}

IntegerMatrixGroup::Matrix IntegerMatrixGroup::matrix(const Element& e) const {
  detail::ByteReader r(e.key());
  Matrix m(n_ * n_);
  for (auto& v : m) v = r.mpz();
  if (!r.done()) throw InvalidArgument("not a matrix group element");
  return m;
}

Element IntegerMatrixGroup::identity() const {
  Matrix m(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) m[i * n_ + i] = 1;
  return encode(m);
}

Element IntegerMatrixGroup::element(const Matrix& m) const {
  if (m.size() != n_ * n_) throw InvalidArgument("matrix has the wrong shape");
  mpz_class det = bareiss_determinant(m, n_);
  if (det != 1 && det != -1) throw InvalidArgument("matrix is not invertible over the integers");
  return encode(m);
}

Element IntegerMatrixGroup::element(std::initializer_list<std::initializer_list<long>> rows) const {
  Matrix m;
  for (const auto& row : rows) {
    if (row.size() != n_) throw InvalidArgument("matrix has the wrong shape");
    for (long v : row) m.emplace_back(v);
  }
  return element(m);
}

Element IntegerMatrixGroup::multiply(const Element& a, const Element& b) const {
  const Matrix x = matrix(a);
  const Matrix y = matrix(b);
  Matrix z(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const mpz_class& xik = x[i * n_ + k];
      if (xik == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) z[i * n_ + j] += xik * y[k * n_ + j];
    }
  }
  return encode(z);
}

Element IntegerMatrixGroup::invert(const Element& a) const {
  const Matrix x = matrix(a);
  if (n_ == 1) return encode(x);  // entries are +-1
  if (n_ == 2) {
    mpz_class det = x[0] * x[3] - x[1] * x[2];
    return encode(Matrix{x[3] * det, -x[1] * det, -x[2] * det, x[0] * det});
  }
  // Gauss-Jordan over the rationals; the result is integral since det = +-1.
  std::vector<mpq_class> aug(n_ * 2 * n_);
  const std::size_t w = 2 * n_;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) aug[i * w + j] = x[i * n_ + j];
    aug[i * w + n_ + i] = 1;
  }
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot = col;
    while (pivot < n_ && aug[pivot * w + col] == 0) ++pivot;
    if (pivot == n_) throw InvalidArgument("singular matrix");
    if (pivot != col)
      for (std::size_t j = 0; j < w; ++j) std::swap(aug[pivot * w + j], aug[col * w + j]);
    mpq_class p = aug[col * w + col];
    for (std::size_t j = 0; j < w; ++j) aug[col * w + j] /= p;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == col || aug[i * w + col] == 0) continue;
      mpq_class f = aug[i * w + col];
      for (std::size_t j = 0; j < w; ++j) aug[i * w + j] -= f * aug[col * w + j];
    }
  }
  Matrix inv(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const mpq_class& v = aug[i * w + n_ + j];
      if (v.get_den() != 1) throw InvalidArgument("matrix inverse is not integral");
      inv[i * n_ + j] = v.get_num();
    }
  }
  return encode(inv);
}

std::string IntegerMatrixGroup::describe(const Element& a) const {
  const Matrix m = matrix(a);
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out << ',';
    out << '[';
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) out << ',';
      out << m[i * n_ + j].get_str();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------- DyadicAffineGroup

namespace {

mp_bitcnt_t shift_amount(std::int64_t k) {
  if (k > (std::int64_t{1} << 32) || k < -(std::int64_t{1} << 32))
    throw ArithmeticOverflow("dyadic scaling exponent too large");
  return static_cast<mp_bitcnt_t>(k < 0 ? -k : k);
}

mpq_class scale_by_power_of_two(const mpq_class& q, std::int64_t k) {
  mpq_class out;
  if (k >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), q.get_mpq_t(), shift_amount(k));
  } else {
    mpq_div_2exp(out.get_mpq_t(), q.get_mpq_t(), shift_amount(k));
  }
  return out;
}

}  // namespace

Element DyadicAffineGroup::element(const Map& map) const {
  mpq_class m = map.m;
  m.canonicalize();
  const mpz_class& den = m.get_den();
  if ((den & (den - 1)) != 0) throw InvalidArgument("translation is not a dyadic rational");
  detail::ByteWriter w;
  w.i64(map.k);
  w.mpz(m.get_num());
  w.mpz(m.get_den());
  return Element(w.take());
}

DyadicAffineGroup::Map DyadicAffineGroup::map(const Element& e) const {
  detail::ByteReader r(e.key());
  Map out;
  out.k = r.i64();
  mpz_class num = r.mpz();
  mpz_class den = r.mpz();
  if (!r.done() || den <= 0) throw InvalidArgument("not a dyadic affine element");
  out.m = mpq_class(num, den);
  return out;
}

Element DyadicAffineGroup::multiply(const Element& a, const Element& b) const {
  const Map f = map(a);
  const Map g = map(b);
  Map out;
  out.k = detail::checked_add(f.k, g.k);
  out.m = f.m + scale_by_power_of_two(g.m, f.k);
  return element(out);
}

Element DyadicAffineGroup::invert(const Element& a) const {
  const Map f = map(a);
  Map out;
  out.k = detail::checked_neg(f.k);
  out.m = -scale_by_power_of_two(f.m, out.k);
  return element(out);
}

std::string DyadicAffineGroup::describe(const Element& a) const {
  const Map f = map(a);
  return "x -> 2^" + std::to_string(f.k) + " x + " + f.m.get_str();
}

// ----------------------------------------------------------------- FreeGroup

FreeGroup::FreeGroup(std::uint32_t rank) : rank_(rank) {
  if (rank_ > 127) throw InvalidArgument("free group rank must be at most 127");
}

Element FreeGroup::element(const Word& w) const {
  std::string bytes;
  for (Letter l : reduce(w)) {
    if (l.generator >= rank_) throw InvalidArgument("letter outside the free basis");
    bytes.push_back(static_cast<char>(l.rank()));
  }
  return Element(std::move(bytes));
}

Word FreeGroup::word(const Element& e) const {
  Word w;
  for (unsigned char c : e.key()) w.push_back(Letter{c / 2u, (c & 1u) != 0});
  return w;
}

Element FreeGroup::multiply(const Element& a, const Element& b) const {
  // Letter ranks of x and x^-1 differ only in the low bit.
  const std::string& x = a.key();
  const std::string& y = b.key();
  std::size_t cancel = 0;
  while (cancel < x.size() && cancel < y.size() &&
         static_cast<unsigned char>(x[x.size() - 1 - cancel]) == (static_cast<unsigned char>(y[cancel]) ^ 1u)) {
    ++cancel;
  }
  std::string out;
  out.reserve(x.size() + y.size() - 2 * cancel);
  out.append(x, 0, x.size() - cancel);
  out.append(y, cancel, std::string::npos);
  return Element(std::move(out));
}

Element FreeGroup::invert(const Element& a) const {
  std::string out(a.key().rbegin(), a.key().rend());
  for (auto& c : out) c = static_cast<char>(static_cast<unsigned char>(c) ^ 1u);
  return Element(std::move(out));
}

std::string FreeGroup::describe(const Element& a) const {
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < rank_; ++i) names.push_back("f" + std::to_string(i + 1));
  return format_word(word(a), Alphabet(names));
}

// ------------------------------------------------------------- DirectProduct

DirectProduct::DirectProduct(std::vector<std::shared_ptr<const GroupModel>> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("direct product needs at least one factor");
  for (const auto& f : factors_)
    if (!f) throw InvalidArgument("null factor in direct product");
}

Element DirectProduct::make(const std::vector<Element>& components) const {
  if (components.size() != factors_.size()) throw InvalidArgument("wrong number of product components");
  detail::ByteWriter w;
  for (const auto& c : components) w.bytes(c.key());
  return Element(w.take());
}

std::vector<Element> DirectProduct::components(const Element& e) const {
  detail::ByteReader r(e.key());
  std::vector<Element> out;
  out.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out.emplace_back(std::string(r.bytes()));
  if (!r.done()) throw InvalidArgument("not a product element");
  return out;
}

Element DirectProduct::identity() const {
  std::vector<Element> parts;
  for (const auto& f : factors_) parts.push_back(f->identity());
  return make(parts);
}

Element DirectProduct::multiply(const Element& a, const Element& b) const {
  auto x = components(a);
  auto y = components(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->multiply(x[i], y[i]);
  return make(x);
}

Element DirectProduct::invert(const Element& a) const {
  auto x = components(a);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->invert(x[i]);
  return make(x);
}

std::string DirectProduct::describe(const Element& a) const {
  auto x = components(a);
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += factors_[i]->describe(x[i]);
  }
  return out + ")";
}

}  // namespace gdist
