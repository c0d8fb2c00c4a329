#include "singlab/group.hpp"

#include <cmath>
#include <stdexcept>

#include "singlab/rng.hpp"

namespace singlab {

namespace {
double ipow(double b, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

bool law_is_addition(int n, const std::vector<LawTerm>& law) {
    // detects the purely abelian table z_i = x_i + y_i
    std::vector<double> xc(n, 0.0), yc(n, 0.0);
    for (const auto& t : law) {
        int deg = 0, xi = -1, yi = -1;
        for (int i = 0; i < n; ++i) {
            deg += t.xexp[i] + t.yexp[i];
            if (t.xexp[i] == 1) xi = i;
            if (t.yexp[i] == 1) yi = i;
        }
        if (deg != 1) return false;
        if (xi >= 0) {
            if (xi != t.out) return false;
            xc[xi] += t.coef;
        } else {
            if (yi != t.out) return false;
            yc[yi] += t.coef;
        }
    }
    for (int i = 0; i < n; ++i)
        if (xc[i] != 1.0 || yc[i] != 1.0) return false;
    return true;
}
}  // namespace

GroupStructure::GroupStructure(std::vector<double> exponents, std::vector<LawTerm> law,
                               InverseRule inverse_rule, std::vector<LawTerm> inverse_law,
                               std::uint64_t a0_seed, int a0_samples)
    : n_(static_cast<int>(exponents.size())),
      exponents_(std::move(exponents)),
      law_(std::move(law)),
      inverse_rule_(inverse_rule),
      inverse_law_(std::move(inverse_law)) {
    if (n_ <= 0) throw std::invalid_argument("group: empty exponent list");
    for (int i = 0; i < n_; ++i) {
        if (exponents_[i] <= 0) throw std::invalid_argument("group: exponents must be positive");
        if (i > 0 && exponents_[i] < exponents_[i - 1])
            throw std::invalid_argument("group: exponents must be nondecreasing");
    }
    Q_ = 0.0;
    for (double a : exponents_) Q_ += a;
    for (const auto& t : law_) {
        if (t.out < 0 || t.out >= n_ || static_cast<int>(t.xexp.size()) != n_ ||
            static_cast<int>(t.yexp.size()) != n_)
            throw std::invalid_argument("group: malformed law term");
    }
    if (inverse_rule_ == InverseRule::explicit_polynomial && inverse_law_.empty())
        throw std::invalid_argument("group: explicit inverse rule without a table");
    abelian_ = law_is_addition(n_, law_);
    a0_ = estimate_A0(a0_samples, a0_seed);
}

void GroupStructure::check_point(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("group: point dimension mismatch");
}

Point GroupStructure::multiply(std::span<const double> x, std::span<const double> y) const {
    check_point(x);
    check_point(y);
    Point z(n_, 0.0);
    if (abelian_) {
        for (int i = 0; i < n_; ++i) z[i] = x[i] + y[i];
        return z;
    }
    for (const auto& t : law_) {
        double v = t.coef;
        for (int i = 0; i < n_; ++i) {
            if (t.xexp[i]) v *= ipow(x[i], t.xexp[i]);
            if (t.yexp[i]) v *= ipow(y[i], t.yexp[i]);
        }
        z[t.out] += v;
    }
    return z;
}

Point GroupStructure::invert(std::span<const double> x) const {
    check_point(x);
    Point z(n_, 0.0);
    if (inverse_rule_ == InverseRule::negation) {
        for (int i = 0; i < n_; ++i) z[i] = -x[i];
        return z;
    }
    for (const auto& t : inverse_law_) {
        double v = t.coef;
        for (int i = 0; i < n_; ++i)
            if (t.xexp[i]) v *= ipow(x[i], t.xexp[i]);
        z[t.out] += v;
    }
    return z;
}

Point GroupStructure::dilate(double t, std::span<const double> x) const {
    check_point(x);
    if (!(t > 0)) throw std::domain_error("group: dilation parameter must be positive");
    Point z(n_);
    for (int i = 0; i < n_; ++i) z[i] = std::pow(t, exponents_[i]) * x[i];
    return z;
}

double GroupStructure::quasi_norm(std::span<const double> x) const {
    check_point(x);
    double r = 0.0;
    for (int i = 0; i < n_; ++i) {
        double v = std::pow(std::fabs(x[i]), 1.0 / exponents_[i]);
        if (v > r) r = v;
    }
    return r;
}

double GroupStructure::quasi_distance(std::span<const double> x, std::span<const double> y) const {
    return quasi_norm(multiply(invert(x), y));
}

double GroupStructure::estimate_A0(int samples, std::uint64_t seed, double range) const {
    auto rng = substream(seed, 0xA0);
    std::uniform_real_distribution<double> u(-range, range);
    Point x(n_), y(n_), z(n_);
    double best = 1.0;
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < n_; ++i) { x[i] = u(rng); y[i] = u(rng); z[i] = u(rng); }
        double num = quasi_distance(x, y);
        double den = quasi_distance(x, z) + quasi_distance(z, y);
        if (den > 0 && num / den > best) best = num / den;
    }
    return best;
}

GroupStructure GroupStructure::abelian(std::vector<double> exponents) {
    int n = static_cast<int>(exponents.size());
    std::vector<LawTerm> law;
    for (int i = 0; i < n; ++i) {
        LawTerm tx{i, std::vector<int>(n, 0), std::vector<int>(n, 0), 1.0};
        tx.xexp[i] = 1;
        LawTerm ty{i, std::vector<int>(n, 0), std::vector<int>(n, 0), 1.0};
        ty.yexp[i] = 1;
        law.push_back(tx);
        law.push_back(ty);
    }
    return GroupStructure(std::move(exponents), std::move(law));
}

GroupStructure GroupStructure::heisenberg() {
    // (x,y,t)(x',y',t') = (x+x', y+y', t+t'+(x y' - y x')/2)
    const int n = 3;
    std::vector<LawTerm> law;
    auto term = [&](int out, std::initializer_list<int> xe, std::initializer_list<int> ye, double c) {
        law.push_back({out, std::vector<int>(xe), std::vector<int>(ye), c});
    };
    term(0, {1, 0, 0}, {0, 0, 0}, 1.0);
    term(0, {0, 0, 0}, {1, 0, 0}, 1.0);
    term(1, {0, 1, 0}, {0, 0, 0}, 1.0);
    term(1, {0, 0, 0}, {0, 1, 0}, 1.0);
    term(2, {0, 0, 1}, {0, 0, 0}, 1.0);
    term(2, {0, 0, 0}, {0, 0, 1}, 1.0);
    term(2, {1, 0, 0}, {0, 1, 0}, 0.5);
    term(2, {0, 1, 0}, {1, 0, 0}, -0.5);
    return GroupStructure({1.0, 1.0, 2.0}, std::move(law));
}

}  // namespace singlab
