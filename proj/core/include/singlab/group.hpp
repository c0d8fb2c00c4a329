#pragma once

// Homogeneous group in global exponential coordinates: identity 0, polynomial
// multiplication given by a dense monomial coefficient table, anisotropic
// dilations t^(a_j) x_j, quasi-norm rho(x) = max_j |x_j|^(1/a_j).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace singlab {

using Point = std::vector<double>;

// One monomial term of a polynomial group law: coef * prod x_i^xe_i * prod y_i^ye_i
// contributing to output coordinate `out`.
struct LawTerm {
    int out = 0;
    std::vector<int> xexp;
    std::vector<int> yexp;
    double coef = 0.0;
};

enum class InverseRule { negation, explicit_polynomial };

class GroupStructure {
public:
    GroupStructure(std::vector<double> exponents, std::vector<LawTerm> law,
                   InverseRule inverse_rule = InverseRule::negation,
                   std::vector<LawTerm> inverse_law = {},
                   std::uint64_t a0_seed = 17, int a0_samples = 2000);

    int dim() const { return n_; }
    double homogeneous_dim() const { return Q_; }  // Q = sum_j a_j
    const std::vector<double>& exponents() const { return exponents_; }
    double quasi_triangle_constant() const { return a0_; }
    InverseRule inverse_rule() const { return inverse_rule_; }
    bool is_abelian() const { return abelian_; }

    Point multiply(std::span<const double> x, std::span<const double> y) const;
    Point invert(std::span<const double> x) const;
    Point dilate(double t, std::span<const double> x) const;  // t > 0
    double quasi_norm(std::span<const double> x) const;
    double quasi_distance(std::span<const double> x, std::span<const double> y) const;

    // Lower estimate of A0 = sup d(x,y)/(d(x,z)+d(z,y)) over seeded random
    // triples in [-range, range]^n, clipped below at 1.
    double estimate_A0(int samples, std::uint64_t seed = 17, double range = 2.0) const;

    static GroupStructure abelian(std::vector<double> exponents);
    // First Heisenberg group, exponents (1,1,2), Q = 4.
    static GroupStructure heisenberg();

private:
    int n_;
    std::vector<double> exponents_;
    double Q_;
    std::vector<LawTerm> law_;
    InverseRule inverse_rule_;
    std::vector<LawTerm> inverse_law_;
    bool abelian_;
    double a0_;

    void check_point(std::span<const double> x) const;
};

}  // namespace singlab
