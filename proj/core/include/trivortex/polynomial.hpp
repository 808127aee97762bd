#pragma once

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

#include "trivortex/errors.hpp"
#include "trivortex/rational.hpp"

namespace trivortex {

template <class T>
class UniPoly;

/// Minimal ring interface used by the fraction-free elimination below.
/// exact_div must be exact for exact coefficient types; the polynomial
/// specialization asserts a zero remainder.
template <class T>
struct RingOps {
    static T zero() { return T(0); }
    static T one() { return T(1); }
    static bool is_zero(const T& v) { return v == T(0); }
    static T exact_div(const T& a, const T& b) { return a / b; }
};

/// Dense univariate polynomial, coefficients stored lowest degree first.
/// The zero polynomial has an empty coefficient vector and degree -1.
template <class T>
class UniPoly {
  public:
    UniPoly() = default;
    UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly one() { return UniPoly{RingOps<T>::one()}; }
    static UniPoly variable() { return UniPoly{RingOps<T>::zero(), RingOps<T>::one()}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coefficients() const { return c_; }

    /// Coefficient of x^k; zero beyond the stored degree.
    T coeff(int k) const {
        if (k < 0 || k > degree()) return RingOps<T>::zero();
        return c_[static_cast<std::size_t>(k)];
    }
    T leading() const {
        if (is_zero()) throw PreconditionError("UniPoly::leading: zero polynomial");
        return c_.back();
    }

    template <class U>
    U eval(const U& x) const {
        U acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }

    UniPoly derivative() const {
        if (degree() < 1) return UniPoly{};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<int>(k));
        return UniPoly(std::move(d));
    }

    /// Multiply by x^k.
    UniPoly shifted(int k) const {
        if (is_zero()) return {};
        std::vector<T> d(c_.size() + static_cast<std::size_t>(k), RingOps<T>::zero());
        std::copy(c_.begin(), c_.end(), d.begin() + k);
        return UniPoly(std::move(d));
    }

    UniPoly operator-() const {
        UniPoly r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<T> d(std::max(a.c_.size(), b.c_.size()), RingOps<T>::zero());
        for (std::size_t k = 0; k < a.c_.size(); ++k) d[k] = d[k] + a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) d[k] = d[k] + b.c_[k];
        return UniPoly(std::move(d));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> d(a.c_.size() + b.c_.size() - 1, RingOps<T>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] = d[i + j] + a.c_[i] * b.c_[j];
        return UniPoly(std::move(d));
    }
    friend UniPoly operator*(const T& s, const UniPoly& p) {
        UniPoly r(p);
        for (auto& v : r.c_) v = s * v;
        r.trim();
        return r;
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Long division over field coefficients: *this = q*d + r, deg r < deg d.
    std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const {
        if (d.is_zero()) throw PreconditionError("UniPoly::divrem: division by zero polynomial");
        UniPoly r(*this);
        if (r.degree() < d.degree()) return {UniPoly{}, r};
        std::vector<T> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), RingOps<T>::zero());
        const T lead = d.leading();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const int k = r.degree() - d.degree();
            const T f = RingOps<T>::exact_div(r.leading(), lead);
            q[static_cast<std::size_t>(k)] = f;
            r = r - f * d.shifted(k);
        }
        return {UniPoly(std::move(q)), r};
    }

    /// Division known to be exact; throws if a remainder survives.
    UniPoly exact_div(const UniPoly& d) const {
        auto [q, r] = divrem(d);
        if (!r.is_zero()) throw Error("UniPoly::exact_div: nonzero remainder");
        return q;
    }

  private:
    void trim() {
        while (!c_.empty() && RingOps<T>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

template <class T>
struct RingOps<UniPoly<T>> {
    static UniPoly<T> zero() { return {}; }
    static UniPoly<T> one() { return UniPoly<T>::one(); }
    static bool is_zero(const UniPoly<T>& p) { return p.is_zero(); }
    static UniPoly<T> exact_div(const UniPoly<T>& a, const UniPoly<T>& b) { return a.exact_div(b); }
};

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
/// Every division performed is exact in the coefficient ring, so exact
/// inputs give an exact determinant with no fraction blowup.
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> m) {
    const std::size_t n = m.size();
    if (n == 0) return RingOps<R>::one();
    int sgn = 1;
    R prev = RingOps<R>::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (RingOps<R>::is_zero(m[k][k])) {
            std::size_t p = k + 1;
            while (p < n && RingOps<R>::is_zero(m[p][k])) ++p;
            if (p == n) return RingOps<R>::zero();
            std::swap(m[k], m[p]);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = RingOps<R>::exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    R det = m[n - 1][n - 1];
    return sgn < 0 ? R(-det) : det;
}

/// Sylvester matrix of dimension deg a + deg b, coefficients laid out in
/// descending powers: deg b rows of a followed by deg a rows of b, each
/// block shifting one column per row.
template <class T>
std::vector<std::vector<T>> sylvester_matrix(const UniPoly<T>& a, const UniPoly<T>& b) {
    if (a.is_zero() || b.is_zero())
        throw PreconditionError("sylvester_matrix: zero polynomial");
    const int da = a.degree(), db = b.degree();
    const int n = da + db;
    std::vector<std::vector<T>> m(static_cast<std::size_t>(n),
                                  std::vector<T>(static_cast<std::size_t>(n), RingOps<T>::zero()));
    for (int r = 0; r < db; ++r)
        for (int k = 0; k <= da; ++k) m[r][r + k] = a.coeff(da - k);
    for (int r = 0; r < da; ++r)
        for (int k = 0; k <= db; ++k) m[db + r][r + k] = b.coeff(db - k);
    return m;
}

namespace detail {
template <class T>
T ring_pow(T base, int e) {
    T acc = RingOps<T>::one();
    for (int k = 0; k < e; ++k) acc = acc * base;
    return acc;
}
}  // namespace detail

/// res(a, b): determinant of the Sylvester matrix. Constant polynomials
/// follow the usual convention res(c, b) = c^{deg b}.
template <class T>
T resultant(const UniPoly<T>& a, const UniPoly<T>& b) {
    if (a.is_zero() || b.is_zero()) throw PreconditionError("resultant: zero polynomial");
    const int da = a.degree(), db = b.degree();
    if (da == 0 && db == 0) return RingOps<T>::one();
    if (da == 0) return detail::ring_pow(a.coeff(0), db);
    if (db == 0) return detail::ring_pow(b.coeff(0), da);
    return bareiss_determinant(sylvester_matrix(a, b));
}

/// disc(p) = (-1)^{n(n-1)/2} res(p, p') / lead(p); deg >= 2 required.
/// For a quadratic this is exactly b^2 - 4ac.
template <class T>
T discriminant(const UniPoly<T>& p) {
    const int n = p.degree();
    if (n < 2) throw PreconditionError("discriminant: degree must be at least 2");
    T r = resultant(p, p.derivative());
    r = RingOps<T>::exact_div(r, p.leading());
    return (n * (n - 1) / 2) % 2 == 1 ? T(-r) : r;
}

/// Bivariate polynomial in (x, y) as a polynomial in y whose coefficients
/// are polynomials in x. Resultants over the outer ring eliminate y.
template <class T>
using BiPoly = UniPoly<UniPoly<T>>;

template <class T>
BiPoly<T> bipoly_constant(const T& c) {
    if (RingOps<T>::is_zero(c)) return {};
    return BiPoly<T>{UniPoly<T>{c}};
}
template <class T>
BiPoly<T> bipoly_x() {
    return BiPoly<T>{UniPoly<T>::variable()};
}
template <class T>
BiPoly<T> bipoly_y() {
    return BiPoly<T>{UniPoly<T>{}, UniPoly<T>::one()};
}

template <class T, class U>
U bipoly_eval(const BiPoly<T>& p, const U& x, const U& y) {
    U acc{};
    for (int j = p.degree(); j >= 0; --j) acc = acc * y + p.coeff(j).template eval<U>(x);
    return acc;
}

/// res_y(f, g): eliminates y, returning a polynomial in x.
template <class T>
UniPoly<T> resultant_in_y(const BiPoly<T>& f, const BiPoly<T>& g) {
    return resultant(f, g);
}

/// Appendix-style triple elimination: res_x( res_y(f,g), res_y(g,h) ).
/// Zero when the three polynomials share a common root (necessary, not
/// sufficient). Throws if an intermediate resultant degenerates to the
/// zero polynomial; the caller is expected to perturb.
template <class T>
T eliminate_three(const BiPoly<T>& f, const BiPoly<T>& g, const BiPoly<T>& h) {
    UniPoly<T> A = resultant_in_y(f, g);
    UniPoly<T> B = resultant_in_y(g, h);
    if (A.is_zero() || B.is_zero())
        throw Error("eliminate_three: degenerate intermediate resultant (identically zero)");
    if (A.degree() == 0 && B.degree() == 0) return A.coeff(0) * B.coeff(0);
    if (A.degree() == 0) return detail::ring_pow(A.coeff(0), B.degree());
    if (B.degree() == 0) return detail::ring_pow(B.coeff(0), A.degree());
    return resultant(A, B);
}

inline UniPoly<double> to_double_poly(const UniPoly<Rational>& p) {
    std::vector<double> c(p.coefficients().size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = to_double(p.coefficients()[k]);
    return UniPoly<double>(std::move(c));
}

}  // namespace trivortex
