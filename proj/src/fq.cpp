#include "qemac/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "qemac/util.hpp"

namespace qemac {

namespace {

constexpr std::uint64_t kMaxQ = 1ull << 31;
constexpr std::uint64_t kMaxTableQ = 512;  // dense mul/inv tables below this

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p) as low-first coefficient vectors.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a / b, b monic.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t t = a[shift + i] + static_cast<std::uint64_t>(p) * lead - lead * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>(t % p);
    }
    trim(a);
  }
  return a;
}

bool divides(const Poly& d, const Poly& f, std::uint32_t p) { return poly_rem(f, d, p).empty(); }

// Monic f irreducible over GF(p): no monic divisor of degree 1..deg(f)/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  if (f[0] == 0) return false;  // x divides
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly cand(d + 1, 0);
      std::uint64_t t = v;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      cand[d] = 1;
      if (divides(cand, f, p)) return false;
    }
  }
  return true;
}

}  // namespace

const Field& Field::get(std::uint32_t p, std::uint32_t r) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Field>> registry;

  require(is_prime(p), errc::non_prime_characteristic,
          "field characteristic must be prime, got " + std::to_string(p));
  require(r >= 1, errc::invalid_argument, "extension degree must be >= 1");
  long double qf = 1.0L;
  for (std::uint32_t i = 0; i < r; ++i) qf *= p;
  require(qf <= static_cast<long double>(kMaxQ), errc::unsupported_size,
          "field order p^r exceeds 2^31");

  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, r);
  auto it = registry.find(key);
  if (it == registry.end()) it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, r))).first;
  return *it->second;
}

Field::Field(std::uint32_t p, std::uint32_t r) : p_(p), r_(r) {
  p_pow_.resize(r + 1);
  p_pow_[0] = 1;
  for (std::uint32_t i = 1; i <= r; ++i) p_pow_[i] = p_pow_[i - 1] * p;
  q_ = p_pow_[r];

  if (r == 1) {
    modulus_ = {0, 1};
  } else {
    // Lexicographically-first monic irreducible of degree r.
    for (std::uint64_t v = 0;; ++v) {
      require(v < q_, errc::invalid_argument, "no irreducible modulus found");  // cannot happen
      Poly f(r + 1, 0);
      std::uint64_t t = v;
      for (std::uint32_t i = 0; i < r; ++i) {
        f[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      f[r] = 1;
      if (is_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
    // Reduction rows: x^{r+j} mod modulus, j in [0, r-2].
    red_.resize(r > 1 ? r - 1 : 0);
    std::vector<std::uint32_t> cur(r);  // x^r mod modulus = -(c_0..c_{r-1})
    for (std::uint32_t i = 0; i < r; ++i) cur[i] = (p - modulus_[i]) % p;
    for (std::uint32_t j = 0; j + 1 < r; ++j) {
      if (j > 0) {
        // multiply cur by x, reduce once
        std::vector<std::uint32_t> nxt(r, 0);
        std::uint32_t carry = cur[r - 1];
        for (std::uint32_t i = r - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        for (std::uint32_t i = 0; i < r; ++i)
          nxt[i] = static_cast<std::uint32_t>(
              (nxt[i] + static_cast<std::uint64_t>(carry) * ((p - modulus_[i]) % p)) % p);
        cur = nxt;
      }
      red_[j] = cur;
    }
  }

  if (q_ <= kMaxTableQ) {
    const auto q = static_cast<std::uint32_t>(q_);
    mul_table_.assign(static_cast<std::size_t>(q) * q, 0);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b <= a; ++b) {
        const std::uint32_t m = mul_slow(a, b);
        mul_table_[static_cast<std::size_t>(a) * q + b] = m;
        mul_table_[static_cast<std::size_t>(b) * q + a] = m;
      }
    inv_table_.assign(q, 0);
    for (std::uint32_t a = 1; a < q; ++a) {
      if (inv_table_[a]) continue;
      std::uint32_t b = 1;
      while (mul_table_[static_cast<std::size_t>(a) * q + b] != 1) ++b;
      inv_table_[a] = b;
      inv_table_[b] = a;
    }
  }
}

std::vector<std::uint32_t> Field::coeffs(std::uint32_t code) const {
  std::vector<std::uint32_t> c(r_);
  std::uint64_t v = code;
  for (std::uint32_t i = 0; i < r_; ++i) {
    c[i] = static_cast<std::uint32_t>(v % p_);
    v /= p_;
  }
  return c;
}

std::uint32_t Field::code_from_coeffs(const std::vector<std::uint32_t>& c) const {
  require(c.size() == r_, errc::length_mismatch, "coefficient vector has wrong length");
  std::uint64_t code = 0;
  for (std::uint32_t i = r_; i-- > 0;) {
    require(c[i] < p_, errc::invalid_argument, "coefficient out of range");
    code = code * p_ + c[i];
  }
  return static_cast<std::uint32_t>(code);
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (r_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % p_);
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    const auto da = static_cast<std::uint32_t>(a / p_pow_[i] % p_);
    const auto db = static_cast<std::uint32_t>(b / p_pow_[i] % p_);
    out += static_cast<std::uint32_t>(((da + db) % p_) * p_pow_[i]);
  }
  return out;
}

std::uint32_t Field::neg(std::uint32_t a) const {
  if (r_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    const auto d = static_cast<std::uint32_t>(a / p_pow_[i] % p_);
    out += static_cast<std::uint32_t>(((p_ - d) % p_) * p_pow_[i]);
  }
  return out;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
  if (r_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  // Schoolbook product of coefficient vectors, then reduce with red_ rows.
  std::vector<std::uint64_t> prod(2 * r_ - 1, 0);
  for (std::uint32_t i = 0; i < r_; ++i) {
    const std::uint64_t da = a / p_pow_[i] % p_;
    if (!da) continue;
    for (std::uint32_t j = 0; j < r_; ++j) {
      const std::uint64_t db = b / p_pow_[j] % p_;
      prod[i + j] += da * db;
    }
  }
  std::vector<std::uint64_t> acc(r_, 0);
  for (std::uint32_t i = 0; i < r_; ++i) acc[i] = prod[i] % p_;
  for (std::uint32_t j = 0; j + 1 < r_; ++j) {
    const std::uint64_t hi = prod[r_ + j] % p_;
    if (!hi) continue;
    for (std::uint32_t i = 0; i < r_; ++i) acc[i] += hi * red_[j][i];
  }
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i)
    out += static_cast<std::uint32_t>(acc[i] % p_ * p_pow_[i]);
  return out;
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
  return mul_slow(a, b);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t base = a, out = 1;
  while (e) {
    if (e & 1) out = mul(out, base);
    base = mul(base, base);
    e >>= 1;
  }
  return out;
}

std::uint32_t Field::inv(std::uint32_t a) const {
  require(a != 0, errc::division_by_zero, "inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

std::uint32_t Field::trace(std::uint32_t a) const {
  std::uint32_t acc = 0, x = a;
  for (std::uint32_t i = 0; i < r_; ++i) {
    acc = add(acc, x);
    x = pow(x, p_);
  }
  // Trace lands in GF(p): only the constant coefficient survives.
  return static_cast<std::uint32_t>(acc % p_);
}

std::uint32_t Field::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<std::uint32_t>(m);
}

// ---------------------------------------------------------------------------

void Fq::bind_pair(Fq& a, Fq& b) {
  if (a.field_ == b.field_) return;
  if (a.field_ && b.field_)
    fail(errc::invalid_argument, "mixing elements of different fields");
  if (a.field_) {
    b = Fq(*a.field_, a.field_->from_int(b.v_));
  } else {
    a = Fq(*b.field_, b.field_->from_int(a.v_));
  }
}

Fq& Fq::operator+=(const Fq& o) {
  Fq rhs = o;
  bind_pair(*this, rhs);
  if (!field_) {
    v_ += rhs.v_;
    return *this;
  }
  v_ = field_->add(static_cast<std::uint32_t>(v_), static_cast<std::uint32_t>(rhs.v_));
  return *this;
}

Fq& Fq::operator-=(const Fq& o) {
  Fq rhs = o;
  bind_pair(*this, rhs);
  if (!field_) {
    v_ -= rhs.v_;
    return *this;
  }
  v_ = field_->sub(static_cast<std::uint32_t>(v_), static_cast<std::uint32_t>(rhs.v_));
  return *this;
}

Fq& Fq::operator*=(const Fq& o) {
  Fq rhs = o;
  bind_pair(*this, rhs);
  if (!field_) {
    v_ *= rhs.v_;
    return *this;
  }
  v_ = field_->mul(static_cast<std::uint32_t>(v_), static_cast<std::uint32_t>(rhs.v_));
  return *this;
}

Fq& Fq::operator/=(const Fq& o) {
  Fq rhs = o;
  bind_pair(*this, rhs);
  require(field_ != nullptr, errc::invalid_argument, "unbound Fq division");
  v_ = field_->mul(static_cast<std::uint32_t>(v_),
                   field_->inv(static_cast<std::uint32_t>(rhs.v_)));
  return *this;
}

Fq operator-(const Fq& a) {
  if (!a.field_) {
    Fq out;
    out.v_ = -a.v_;
    return out;
  }
  return Fq(*a.field_, a.field_->neg(static_cast<std::uint32_t>(a.v_)));
}

Fq Fq::inverse() const {
  require(field_ != nullptr, errc::invalid_argument, "inverse of unbound Fq");
  return Fq(*field_, field_->inv(static_cast<std::uint32_t>(v_)));
}

bool operator==(const Fq& a, const Fq& b) {
  Fq x = a, y = b;
  Fq::bind_pair(x, y);
  return x.v_ == y.v_;
}

std::ostream& operator<<(std::ostream& os, const Fq& v) {
  return os << v.v_ << (v.bound() ? "" : "?");
}

std::uint32_t field_trace(const Fq& x) { return x.field().trace(x.code()); }

// ---------------------------------------------------------------------------

FqMatrix fq_zeros(const Field& f, Eigen::Index rows, Eigen::Index cols) {
  FqMatrix m(rows, cols);
  m.fill(Fq(f, 0));
  return m;
}

FqMatrix fq_identity(const Field& f, Eigen::Index n) {
  FqMatrix m = fq_zeros(f, n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Fq(f, 1);
  return m;
}

FqMatrix fq_from_codes(const Field& f, Eigen::Index rows, Eigen::Index cols,
                       const std::vector<std::uint32_t>& row_major_codes) {
  require(static_cast<Eigen::Index>(row_major_codes.size()) == rows * cols, errc::length_mismatch,
          "code vector does not match matrix shape");
  FqMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const std::uint32_t c = row_major_codes[static_cast<std::size_t>(i * cols + j)];
      require(c < f.q(), errc::invalid_argument, "element code out of range");
      m(i, j) = Fq(f, c);
    }
  return m;
}

FqMatrix fq_from_ints(const Field& f, Eigen::Index rows, Eigen::Index cols,
                      const std::vector<std::int64_t>& row_major_values) {
  require(static_cast<Eigen::Index>(row_major_values.size()) == rows * cols, errc::length_mismatch,
          "value vector does not match matrix shape");
  FqMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Fq(f, f.from_int(row_major_values[static_cast<std::size_t>(i * cols + j)]));
  return m;
}

FqMatrix fq_random(const Field& f, Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  FqMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Fq(f, static_cast<std::uint32_t>(rng.below(f.q())));
  return m;
}

bool fq_equal(const FqMatrix& a, const FqMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

bool fq_is_zero(const FqMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

FqMatrix hcat(const FqMatrix& a, const FqMatrix& b) {
  require(a.rows() == b.rows(), errc::shape_mismatch, "hcat: row mismatch");
  FqMatrix m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

FqMatrix vcat(const FqMatrix& a, const FqMatrix& b) {
  require(a.cols() == b.cols(), errc::shape_mismatch, "vcat: column mismatch");
  FqMatrix m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(b.rows()) = b;
  return m;
}

std::vector<std::uint32_t> fq_codes(const FqMatrix& m) {
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j).code());
  return out;
}

std::string hex_u64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((v >> shift) & 0xF);
  return os.str();
}

}  // namespace qemac
