#ifndef FQM_MULTIPOLY_HPP
#define FQM_MULTIPOLY_HPP

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqm {

/**
 * Sparse polynomial in a fixed number of variables with coefficients in C.
 * C needs +, -, *, ==, and construction from a long. Zero coefficients are
 * never stored, and the monomial map is ordered, so iteration is
 * deterministic.
 */
template <class C>
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const C& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return p;
  }

  static MultiPoly variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    MultiPoly p(nvars);
    p.add_term(e, C(1L));
    return p;
  }

  int num_vars() const noexcept { return nvars_; }
  const std::map<Exponents, C>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  C coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0L) : it->second;
  }

  void add_term(const Exponents& e, const C& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent vector has wrong length");
    if (c == C(0L)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second == C(0L)) terms_.erase(it);
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, C(0L) - c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly r(a.nvars_);
    Exponents e(static_cast<std::size_t>(a.nvars_));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  friend MultiPoly operator*(const C& s, const MultiPoly& p) {
    MultiPoly r(p.nvars_);
    for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned n) const {
    MultiPoly r = constant(nvars_, C(1L));
    MultiPoly base = *this;
    while (n > 0) {
      if (n & 1U) r = r * base;
      n >>= 1U;
      if (n > 0) base = base * base;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Replaces variable i by images[i]; all images share one variable count.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("need one image per variable");
    const int out_vars = images.empty() ? 0 : images.front().num_vars();
    MultiPoly r(out_vars);
    // cache powers of each image
    std::vector<std::vector<MultiPoly>> powers(images.size());
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(out_vars, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        const auto need = static_cast<std::size_t>(e[i]);
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(out_vars, C(1L)));
        while (pw.size() <= need) pw.push_back(pw.back() * images[i]);
        if (need > 0) term = term * pw[need];
      }
      r += term;
    }
    return r;
  }

  /// Evaluates with coefficients mapped through conv into V.
  template <class V, class Conv>
  V evaluate(const std::vector<V>& point, Conv conv) const {
    if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point has wrong dimension");
    V acc = V(0);
    for (const auto& [e, c] : terms_) {
      V t = conv(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int k = 0; k < e[i]; ++k) t = t * point[i];
      }
      acc = acc + t;
    }
    return acc;
  }

  template <class D, class Map>
  MultiPoly<D> map_coefficients(Map fn) const {
    MultiPoly<D> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  /// Coefficients rendered by fmt; variables by name.
  template <class Fmt>
  std::string to_string(const std::vector<std::string>& names, Fmt fmt) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << fmt(c) << ")";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        os << "*" << names.at(i);
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  void check(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different rings");
  }

  int nvars_;
  std::map<Exponents, C> terms_;
};

}  // namespace fqm

#endif  // FQM_MULTIPOLY_HPP
