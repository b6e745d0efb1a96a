#pragma once

#include <complex>
#include <map>
#include <unordered_map>
#include <vector>

#include "bnf/lattice.hpp"

namespace bnf {

using Complex = std::complex<double>;

/// Truncated phase-space point: xi_a for |a|_inf <= cutoff, stored densely.
/// z_j is xi_a when delta=+1 and conj(xi_a) when delta=-1.
class StateVector {
public:
    StateVector(int dim, int cutoff);

    int dim() const { return dim_; }
    int cutoff() const { return cutoff_; }

    Complex& at(const ModeVector& a);
    const Complex& at(const ModeVector& a) const;
    bool contains(const ModeVector& a) const;

    Complex z(const LatticeIndex& j) const;

    /// Visits every mode in the box.
    template <typename F>
    void for_each_mode(F&& f) const {
        ModeVector a{};
        visit(0, a, f);
    }

    /// ||z||_s per the doubled convention: sqrt(2 sum <a>^{2s} |xi_a|^2).
    double sobolev_norm(double s) const;

private:
    template <typename F>
    void visit(int k, ModeVector& a, F&& f) const {
        if (k == dim_) { f(static_cast<const ModeVector&>(a)); return; }
        for (int c = -cutoff_; c <= cutoff_; ++c) {
            a[k] = c;
            visit(k + 1, a, f);
        }
        a[k] = 0;
    }

    std::size_t flat(const ModeVector& a) const;

    int dim_;
    int cutoff_;
    std::vector<Complex> xi_;
};

/// Sparse symmetric homogeneous polynomial of fixed order.
///
/// Terms map a canonical tuple to the orbit-sum coefficient c: the
/// polynomial is sum_T c_T * z_T over canonical tuples, equivalently
/// sum over ordered tuples of f~ z with f~ = c / orbit_size.
class HomogeneousPolynomial {
public:
    using TermMap = std::unordered_map<IndexTuple, Complex, IndexTupleHash>;

    HomogeneousPolynomial() = default;
    HomogeneousPolynomial(int order, int dim) : order_(order), dim_(dim) {}

    int order() const { return order_; }
    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Adds c to the orbit-sum coefficient of canonical(t); drops exact zeros.
    void add_term(const IndexTuple& t, Complex c);

    /// Symmetric coefficient f~ of the given tuple (0 if absent).
    Complex symmetric_coefficient(const IndexTuple& t) const;
    Complex orbit_coefficient(const IndexTuple& t) const;

    void prune(double epsilon = 0.0);
    HomogeneousPolynomial& operator*=(Complex c);
    HomogeneousPolynomial& operator+=(const HomogeneousPolynomial& other);

private:
    int order_ = 0;
    int dim_ = 1;
    TermMap terms_;
};

/// Builds the symmetric polynomial from as-written (ordered tuple, coeff)
/// pairs, merging permutation-equivalent monomials. Throws on mixed orders.
HomogeneousPolynomial symmetrize(
    const std::vector<std::pair<IndexTuple, Complex>>& raw, int dim);

Complex evaluate(const HomogeneousPolynomial& f, const StateVector& z);

/// |f|_{s,N} (exact for the stored support; a lower bound after cutoff
/// truncation). Throws if N < s.
double sn_norm(const HomogeneousPolynomial& f, double s, double N);

/// {f,g} per the bracket -i sum_a (df/dxi_a dg/dxibar_a - df/dxibar_a dg/dxi_a).
HomogeneousPolynomial poisson_bracket(const HomogeneousPolynomial& f,
                                      const HomogeneousPolynomial& g);

struct TangentVector {
    // slot pattern of X_H = -i (dH/dxibar, -dH/dxi): dxi is the xi_a
    // component of the flow, dxibar its conjugate partner slot.
    std::unordered_map<std::uint64_t, Complex> dxi;
    std::unordered_map<std::uint64_t, Complex> dxibar;
};

/// X_f evaluated at z. Throws if a mode of f falls outside z's cutoff.
TangentVector vector_field(const HomogeneousPolynomial& f, const StateVector& z);

/// True iff coefficients satisfy c_{conj(T)} = conj(c_T) for every term.
bool reality_check(const HomogeneousPolynomial& f);

/// Graded family: order n >= 3 -> homogeneous part of that order.
struct PolynomialFamily {
    std::map<int, HomogeneousPolynomial> parts;
    int order_cap = 0;
    bool tail_dropped = false;

    bool empty() const;
    int min_order() const;   // 0 when empty
    int max_order() const;
    void add_part(const HomogeneousPolynomial& p);
    const HomogeneousPolynomial* part(int order) const;
};

/// <|f|>_{s,N}^R = sum_i |f_{i+2}|_{s,N} R^i over represented parts.
double family_norm(const PolynomialFamily& F, double s, double N, double R);

Complex evaluate(const PolynomialFamily& F, const StateVector& z);
TangentVector vector_field(const PolynomialFamily& F, const StateVector& z);
bool reality_check(const PolynomialFamily& F);

/// J_a table keyed by |a|^2 class: sum over the class of |xi_b|^2,
/// counted once per mode (z_b zbar_b with both z components equals |xi_b|^2).
std::map<long long, double> super_actions(const StateVector& z);

/// I_a = |xi_a|^2 keyed by packed mode.
std::unordered_map<std::uint64_t, double> actions(const StateVector& z);

std::uint64_t pack_mode(const ModeVector& a);
ModeVector unpack_mode(std::uint64_t key);

}  // namespace bnf
