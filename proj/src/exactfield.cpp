#include "dvdp/exactfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dvdp {

// ---------------------------------------------------------------- Rational

namespace {
__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
constexpr __int128 kLimit = static_cast<__int128>(INT64_MAX);
}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kLimit || n < -kLimit || d > kLimit) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<long long>(n);
  r.den_ = static_cast<long long>(d);
  return r;
}

Rational::Rational(long long n, long long d) { *this = make(n, d); }

long long Rational::floor() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}
long long Rational::ceil() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Rational Rational::operator+(const Rational& o) const {
  return make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
              static_cast<__int128>(den_) * o.den_);
}
Rational Rational::operator-(const Rational& o) const { return *this + (-o); }
Rational Rational::operator*(const Rational& o) const {
  return make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}
bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

// ---------------------------------------------------------------- FieldDesc

namespace {

// Conway polynomials, coefficients low to high.
const std::map<std::pair<int, int>, std::vector<int>>& moduli_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> t = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{3, 7}, {1, 0, 2, 0, 0, 0, 0, 1}},
      {{3, 8}, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{0, 1}, {0, 1}},
      {{0, 2}, {1, 1, 1}},
  };
  return t;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Polynomial remainder over F_p, coefficient vectors low to high.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& m, int p) {
  int dm = static_cast<int>(m.size()) - 1;
  int lead_inv = 1;
  while ((lead_inv * m.back()) % p != 1) ++lead_inv;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    int c = (a[i] % p + p) % p;
    if (c == 0) continue;
    int f = (c * lead_inv) % p;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - f * m[j]) % p + p) % p;
  }
  a.resize(std::max(dm, 0));
  for (auto& c : a) c = (c % p + p) % p;
  return a;
}

bool irreducible(const std::vector<int>& m, int p) {
  int k = static_cast<int>(m.size()) - 1;
  for (int d = 1; d <= k / 2; ++d) {
    int count = ipow(p, d);
    for (int c = 0; c < count; ++c) {
      std::vector<int> f(d + 1, 0);
      int x = c;
      for (int i = 0; i < d; ++i) {
        f[i] = x % p;
        x /= p;
      }
      f[d] = 1;
      auto r = poly_rem(m, f, p);
      if (std::all_of(r.begin(), r.end(), [](int v) { return v == 0; })) return false;
    }
  }
  return true;
}

}  // namespace

FieldDesc::FieldDesc(int p, int k) : p_(p), k_(k) {
  auto it = moduli_table().find({p, k});
  if (it == moduli_table().end()) throw std::invalid_argument("unsupported field");
  modulus_ = it->second;
  if (p == 0) {
    q_ = 0;
    return;
  }
  if (!irreducible(modulus_, p)) throw std::logic_error("modulus table entry is reducible");
  q_ = ipow(p, k);
  gen_ = (k == 1) ? from_int(-modulus_[0]) : p;
  if (q_ <= 1024) {
    add_table_.assign(static_cast<size_t>(q_) * q_, 0);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) add_table_[static_cast<size_t>(a) * q_ + b] = add_digits(a, b, 1);
  }
  // Find a primitive element and build log/exp tables.
  exp_.assign(q_, 0);
  log_.assign(q_, -1);
  for (int cand = 1; cand < q_; ++cand) {
    int x = 1, order = 0;
    do {
      x = poly_mul_mod(x, cand);
      ++order;
    } while (x != 1);
    if (order == q_ - 1) {
      prim_ = cand;
      break;
    }
  }
  int x = 1;
  for (int i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = poly_mul_mod(x, prim_);
  }
  exp_[q_ - 1] = 1;
}

int FieldDesc::add_digits(int a, int b, int sign) const {
  if (p_ == 2) return a ^ b;
  int r = 0, place = 1;
  for (int i = 0; i < k_; ++i) {
    int da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    r += (((da + sign * db) % p_ + p_) % p_) * place;
    place *= p_;
  }
  return r;
}

int FieldDesc::poly_mul_mod(int a, int b) const {
  auto da = digits(a), db = digits(b);
  std::vector<int> prod(2 * k_, 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  return from_digits(poly_rem(prod, modulus_, p_));
}

std::vector<int> FieldDesc::digits(int code) const {
  std::vector<int> d(k_, 0);
  for (int i = 0; i < k_; ++i) {
    d[i] = code % p_;
    code /= p_;
  }
  return d;
}

int FieldDesc::from_digits(const std::vector<int>& d) const {
  int r = 0, place = 1;
  for (int i = 0; i < k_; ++i) {
    int v = i < static_cast<int>(d.size()) ? d[i] : 0;
    r += ((v % p_ + p_) % p_) * place;
    place *= p_;
  }
  return r;
}

int FieldDesc::add(int a, int b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[static_cast<size_t>(a) * q_ + b];
  return add_digits(a, b, 1);
}
int FieldDesc::neg(int a) const {
  if (p_ == 2) return a;
  return add_digits(0, a, -1);
}
int FieldDesc::sub(int a, int b) const {
  if (p_ == 2) return a ^ b;
  return add(a, neg(b));
}
int FieldDesc::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  int s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}
int FieldDesc::inv(int a) const {
  if (a == 0) throw std::domain_error("division by zero");
  int l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}
int FieldDesc::pow(int a, long long e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw std::domain_error("division by zero");
    return 0;
  }
  long long m = q_ - 1;
  long long l = (static_cast<long long>(log_[a]) * (e % m)) % m;
  if (l < 0) l += m;
  return exp_[l];
}
int FieldDesc::from_int(long long v) const {
  if (p_ == 0) throw std::logic_error("from_int on characteristic 0 descriptor");
  return static_cast<int>(((v % p_) + p_) % p_);
}
int FieldDesc::pth_root(int a) const {
  // Frobenius has order k; its inverse is x -> x^{p^{k-1}}.
  int r = a;
  for (int i = 0; i + 1 < k_; ++i) r = pow(r, p_);
  return r;
}

std::string FieldDesc::elem_str(int code) const {
  auto d = digits(code);
  std::string out;
  for (int i = k_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    std::string term;
    if (i == 0) {
      term = std::to_string(d[i]);
    } else {
      if (d[i] != 1) term = std::to_string(d[i]) + "*";
      term += (i == 1) ? "s" : "s^" + std::to_string(i);
    }
    if (!out.empty()) out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

int FieldDesc::parse_elem(const std::string& text) const {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw std::invalid_argument("empty field element");
  std::vector<int> d(k_, 0);
  size_t pos = 0;
  int sign = 1;
  while (pos < s.size()) {
    if (s[pos] == '+') {
      sign = 1;
      ++pos;
      continue;
    }
    if (s[pos] == '-') {
      sign = -1;
      ++pos;
      continue;
    }
    size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = (end == std::string::npos) ? s.size() : end;
    int coef = 1, exp = 0;
    auto spos = term.find('s');
    if (spos == std::string::npos) {
      coef = std::stoi(term);
    } else {
      std::string c = term.substr(0, spos);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (!c.empty()) coef = std::stoi(c);
      std::string e = term.substr(spos + 1);
      exp = e.empty() ? 1 : std::stoi(e.substr(1));
    }
    // reduce s^exp modulo the modulus by multiplying generators
    int term_code = pow(gen_, exp);
    int c = mul(from_int(sign * coef), term_code);
    int cur = from_digits(d);
    cur = add(cur, c);
    d = digits(cur);
    sign = 1;
  }
  return from_digits(d);
}

std::string FieldDesc::name() const {
  if (p_ == 0) return k_ == 1 ? "Q" : "Q(w)";
  return "F" + std::to_string(q_);
}

const FieldDesc& make_field(int characteristic, int extension_degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FieldDesc>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(characteristic, extension_degree);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  if (!moduli_table().count(key)) throw std::invalid_argument("unsupported field");
  auto [ins, ok] = cache.emplace(key, std::make_unique<FieldDesc>(characteristic, extension_degree));
  (void)ok;
  return *ins->second;
}

const std::vector<int>& embedding(const FieldDesc& from, const FieldDesc& to) {
  static std::mutex mu;
  static std::map<std::pair<const FieldDesc*, const FieldDesc*>, std::vector<int>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(&from, &to);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (!from.is_finite() || from.characteristic() != to.characteristic() ||
      to.degree() % from.degree() != 0)
    throw std::invalid_argument("no field embedding");
  const auto& m = from.modulus();
  int image = -1;
  for (int c = 0; c < to.size() && image < 0; ++c) {
    int acc = 0;
    for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) acc = to.add(to.mul(acc, c), to.from_int(m[i]));
    if (acc == 0) image = c;
  }
  std::vector<int> table(from.size());
  for (int code = 0; code < from.size(); ++code) {
    auto d = from.digits(code);
    int acc = 0;
    for (int i = from.degree() - 1; i >= 0; --i) acc = to.add(to.mul(acc, image), to.from_int(d[i]));
    table[code] = acc;
  }
  return cache.emplace(key, std::move(table)).first->second;
}

// ---------------------------------------------------------------- FieldElem

FieldElem FieldElem::from_code(const FieldDesc& f, int code) {
  if (!f.is_finite()) throw std::invalid_argument("from_code needs a finite field");
  if (code < 0 || code >= f.size()) throw std::out_of_range("field code out of range");
  FieldElem e;
  e.f_ = &f;
  e.code_ = code;
  return e;
}
FieldElem FieldElem::from_int(const FieldDesc& f, long long v) {
  if (f.is_finite()) return from_code(f, f.from_int(v));
  return from_rationals(f, Rational(v));
}
FieldElem FieldElem::from_rationals(const FieldDesc& f, Rational a, Rational b) {
  if (f.is_finite()) throw std::invalid_argument("rational coefficients need characteristic 0");
  if (f.degree() == 1 && !b.is_zero()) throw std::invalid_argument("w not in Q");
  FieldElem e;
  e.f_ = &f;
  e.a_ = a;
  e.b_ = b;
  return e;
}
FieldElem FieldElem::gen(const FieldDesc& f) {
  if (f.is_finite()) return from_code(f, f.generator());
  if (f.degree() != 2) throw std::invalid_argument("Q has no generator");
  return from_rationals(f, Rational(0), Rational(1));
}

void FieldElem::check_same(const FieldElem& o) const {
  if (f_ != o.f_ || f_ == nullptr) throw std::invalid_argument("mismatched fields");
}

bool FieldElem::is_zero() const { return f_->is_finite() ? code_ == 0 : (a_.is_zero() && b_.is_zero()); }
bool FieldElem::is_one() const {
  return f_->is_finite() ? code_ == 1 : (a_ == Rational(1) && b_.is_zero());
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  if (f_->is_finite()) return from_code(*f_, f_->add(code_, o.code_));
  return from_rationals(*f_, a_ + o.a_, b_ + o.b_);
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(o);
  if (f_->is_finite()) return from_code(*f_, f_->sub(code_, o.code_));
  return from_rationals(*f_, a_ - o.a_, b_ - o.b_);
}
FieldElem FieldElem::operator-() const {
  if (f_->is_finite()) return from_code(*f_, f_->neg(code_));
  return from_rationals(*f_, -a_, -b_);
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  if (f_->is_finite()) return from_code(*f_, f_->mul(code_, o.code_));
  // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
  Rational ac = a_ * o.a_, bd = b_ * o.b_;
  return from_rationals(*f_, ac - bd, a_ * o.b_ + b_ * o.a_ - bd);
}
FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (f_->is_finite()) return from_code(*f_, f_->inv(code_));
  // conj(a + b w) = a + b w^2 = (a - b) - b w; norm = a^2 - ab + b^2
  Rational n = a_ * a_ - a_ * b_ + b_ * b_;
  return from_rationals(*f_, (a_ - b_) / n, -b_ / n);
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  check_same(o);
  return *this * o.inverse();
}
FieldElem FieldElem::pow(long long e) const {
  if (f_->is_finite()) return from_code(*f_, f_->pow(code_, e));
  FieldElem base = e < 0 ? inverse() : *this;
  if (e < 0) e = -e;
  FieldElem r = one(*f_);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}
bool FieldElem::operator==(const FieldElem& o) const {
  if (f_ != o.f_) return false;
  if (f_ == nullptr) return true;
  return f_->is_finite() ? code_ == o.code_ : (a_ == o.a_ && b_ == o.b_);
}
bool FieldElem::operator<(const FieldElem& o) const {
  check_same(o);
  if (f_->is_finite()) {
    auto da = f_->digits(code_), db = f_->digits(o.code_);
    return da < db;
  }
  if (a_ != o.a_) return a_ < o.a_;
  return b_ < o.b_;
}

std::vector<std::string> FieldElem::coeff_strings() const {
  std::vector<std::string> out;
  if (f_->is_finite()) {
    for (int d : f_->digits(code_)) out.push_back(std::to_string(d));
  } else {
    out.push_back(a_.str());
    if (f_->degree() == 2) out.push_back(b_.str());
  }
  return out;
}

std::string FieldElem::str() const {
  if (f_->is_finite()) return f_->elem_str(code_);
  if (f_->degree() == 1 || b_.is_zero()) return a_.str();
  std::string w = b_ == Rational(1) ? "w" : (b_ == Rational(-1) ? "-w" : b_.str() + "*w");
  if (a_.is_zero()) return w;
  return a_.str() + (w[0] == '-' ? "" : "+") + w;
}

FieldElem arith(const FieldElem& a, const FieldElem& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw std::logic_error("bad op");
}

FieldElem pth_root(const FieldElem& a) {
  if (!a.field().is_finite()) throw std::invalid_argument("pth_root needs a finite field");
  return FieldElem::from_code(a.field(), a.field().pth_root(a.code()));
}

// ---------------------------------------------------------------- roots

namespace {

using Poly = std::vector<FieldElem>;  // low to high

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

FieldElem eval(const Poly& p, const FieldElem& x) {
  FieldElem acc = FieldElem::zero(x.field());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Divide by (t - r); assumes r is a root.
Poly deflate(const Poly& p, const FieldElem& r) {
  int n = static_cast<int>(p.size()) - 1;
  Poly q(n, FieldElem::zero(r.field()));
  FieldElem carry = FieldElem::zero(r.field());
  for (int i = n; i >= 1; --i) {
    carry = p[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

bool rational_sqrt(const Rational& x, Rational& out) {
  if (x < Rational(0)) return false;
  auto isqrt = [](long long v, long long& r) {
    long long s = static_cast<long long>(std::sqrt(static_cast<long double>(v)));
    while (s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    r = s;
    return s * s == v;
  };
  long long n, d;
  if (!isqrt(x.num(), n) || !isqrt(x.den(), d)) return false;
  out = Rational(n, d);
  return true;
}

// Square root in Q(w) when it exists.
bool qw_sqrt(const FieldElem& z, FieldElem& out) {
  const FieldDesc& f = z.field();
  if (z.is_zero()) {
    out = z;
    return true;
  }
  Rational a = z.re(), b = z.im();
  Rational norm = a * a - a * b + b * b;
  Rational n;
  if (!rational_sqrt(norm, n)) return false;
  Rational trace = a + a - b;  // z + conj(z)
  for (int sgn : {1, -1}) {
    Rational nn = sgn == 1 ? n : -n;
    Rational t2 = trace + nn + nn;
    Rational t;
    if (t2.is_zero() || !rational_sqrt(t2, t)) continue;
    FieldElem s = (z + FieldElem::from_rationals(f, nn)) / FieldElem::from_rationals(f, t);
    if (s * s == z) {
      out = s;
      return true;
    }
  }
  return false;
}

std::vector<long long> divisors(long long v) {
  if (v < 0) v = -v;
  std::vector<long long> d;
  for (long long i = 1; i * i <= v; ++i)
    if (v % i == 0) {
      d.push_back(i);
      if (i != v / i) d.push_back(v / i);
    }
  return d;
}

}  // namespace

std::vector<FieldElem> poly_roots(const std::vector<FieldElem>& coeffs, const FieldDesc& field) {
  Poly p = coeffs;
  for (auto& c : p)
    if (c.field_ptr() != &field) throw std::invalid_argument("mismatched fields");
  trim(p);
  if (p.empty()) throw std::invalid_argument("zero polynomial");
  std::vector<FieldElem> roots;
  if (field.is_finite()) {
    for (int c = 0; c < field.size() && p.size() > 1; ++c) {
      FieldElem x = FieldElem::from_code(field, c);
      while (p.size() > 1 && eval(p, x).is_zero()) {
        roots.push_back(x);
        p = deflate(p, x);
      }
    }
  } else {
    // Pull rational roots first when all coefficients are rational.
    bool all_rational = std::all_of(p.begin(), p.end(), [](const FieldElem& c) { return c.im().is_zero(); });
    if (p.size() > 3 && all_rational) {
      long long lcm = 1;
      for (auto& c : p) lcm = std::lcm(lcm, c.re().den());
      std::vector<long long> ic;
      for (auto& c : p) ic.push_back((c.re() * Rational(lcm)).num());
      size_t lo = 0;
      while (lo < ic.size() && ic[lo] == 0) {
        roots.push_back(FieldElem::zero(field));
        ++lo;
      }
      if (lo > 0) p.erase(p.begin(), p.begin() + static_cast<long>(lo));
      if (p.size() > 1) {
        for (long long num : divisors(ic[lo]))
          for (long long den : divisors(ic.back()))
            for (int sgn : {1, -1}) {
              FieldElem x = FieldElem::from_rationals(field, Rational(sgn * num, den));
              while (p.size() > 1 && eval(p, x).is_zero()) {
                roots.push_back(x);
                p = deflate(p, x);
              }
            }
      }
    }
    if (p.size() > 3) throw std::invalid_argument("Q(w) root finding supports degree <= 2");
    if (p.size() == 2) {
      roots.push_back(-p[0] / p[1]);
    } else if (p.size() == 3) {
      FieldElem two = FieldElem::from_int(field, 2), four = FieldElem::from_int(field, 4);
      FieldElem disc = p[1] * p[1] - four * p[0] * p[2];
      FieldElem s;
      if (qw_sqrt(disc, s)) {
        roots.push_back((-p[1] + s) / (two * p[2]));
        roots.push_back((-p[1] - s) / (two * p[2]));
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

nlohmann::json to_json(const FieldElem& e) {
  nlohmann::json j;
  j["p"] = e.field().characteristic();
  j["k"] = e.field().degree();
  j["coeffs"] = e.coeff_strings();
  return j;
}

FieldElem field_elem_from_json(const nlohmann::json& j) {
  const FieldDesc& f = make_field(j.at("p").get<int>(), j.at("k").get<int>());
  auto coeffs = j.at("coeffs").get<std::vector<std::string>>();
  if (f.is_finite()) {
    std::vector<int> d;
    for (auto& c : coeffs) d.push_back(std::stoi(c));
    return FieldElem::from_code(f, f.from_digits(d));
  }
  Rational a = Rational::parse(coeffs.at(0));
  Rational b = coeffs.size() > 1 ? Rational::parse(coeffs[1]) : Rational(0);
  return FieldElem::from_rationals(f, a, b);
}

}  // namespace dvdp
