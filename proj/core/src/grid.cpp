#include "singlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "singlab/parallel.hpp"

namespace singlab {

Lattice::Lattice(std::shared_ptr<const GroupStructure> group, double R,
                 std::vector<int> sites_per_axis)
    : group_(std::move(group)), R_(R), m_(std::move(sites_per_axis)) {
    if (!group_) throw std::invalid_argument("lattice: null group");
    n_ = group_->dim();
    if (static_cast<int>(m_.size()) != n_)
        throw std::invalid_argument("lattice: extent count does not match group dimension");
    if (!(R_ > 0)) throw std::invalid_argument("lattice: box half-width must be positive");
    h_.resize(n_);
    stride_.resize(n_);
    vol_ = 1.0;
    size_ = 1;
    for (int j = 0; j < n_; ++j) {
        if (m_[j] < 2 || m_[j] % 2 != 0)
            throw std::invalid_argument("lattice: per-axis extents must be even and >= 2");
        h_[j] = 2.0 * R_ / m_[j];
        vol_ *= h_[j];
        stride_[j] = size_;
        size_ *= static_cast<std::size_t>(m_[j]);
    }
}

std::size_t Lattice::flat(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int j = 0; j < n_; ++j) f += static_cast<std::size_t>(idx[j]) * stride_[j];
    return f;
}

void Lattice::unflat(std::size_t f, std::span<int> idx) const {
    for (int j = 0; j < n_; ++j) {
        idx[j] = static_cast<int>(f % m_[j]);
        f /= m_[j];
    }
}

void Lattice::site(std::size_t f, std::span<double> x) const {
    for (int j = 0; j < n_; ++j) {
        int i = static_cast<int>(f % m_[j]);
        f /= m_[j];
        x[j] = (i - m_[j] / 2) * h_[j];
    }
}

std::size_t Lattice::origin() const {
    std::size_t f = 0;
    for (int j = 0; j < n_; ++j) f += static_cast<std::size_t>(m_[j] / 2) * stride_[j];
    return f;
}

bool Lattice::compatible(const Lattice& o) const {
    return n_ == o.n_ && R_ == o.R_ && m_ == o.m_ && group_->dim() == o.group_->dim();
}

GridFunction::GridFunction(Lattice lat, std::vector<double> values)
    : lat_(std::move(lat)), v_(std::move(values)) {
    if (v_.size() != lat_.size()) throw std::invalid_argument("grid: value count mismatch");
    for (double x : v_)
        if (!std::isfinite(x)) throw std::invalid_argument("grid: non-finite value");
    refresh_support();
}

GridFunction GridFunction::sample(const Lattice& lat,
                                  const std::function<double(std::span<const double>)>& fn) {
    GridFunction g(lat);
    const int n = lat.dim();
    parallel_for(lat.size(), [&](std::size_t lo, std::size_t hi) {
        std::vector<double> x(n);
        for (std::size_t f = lo; f < hi; ++f) {
            lat.site(f, x);
            g.v_[f] = fn(x);
        }
    });
    g.refresh_support();
    return g;
}

double GridFunction::value_at(std::span<const double> x) const {
    const int n = lat_.dim();
    const auto& m = lat_.extents();
    const auto& h = lat_.spacing();
    int base[8];
    double frac[8];
    for (int j = 0; j < n; ++j) {
        double u = x[j] / h[j] + m[j] / 2;
        double fl = std::floor(u);
        base[j] = static_cast<int>(fl);
        frac[j] = u - fl;
        if (base[j] < -1 || base[j] > m[j] - 1) return 0.0;
    }
    double acc = 0.0;
    const int corners = 1 << n;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        std::size_t f = 0;
        std::size_t stride = 1;
        bool inside = true;
        for (int j = 0; j < n; ++j) {
            int b = base[j] + ((c >> j) & 1);
            w *= ((c >> j) & 1) ? frac[j] : 1.0 - frac[j];
            if (b < 0 || b >= m[j]) { inside = false; break; }
            f += static_cast<std::size_t>(b) * stride;
            stride *= static_cast<std::size_t>(m[j]);
        }
        if (inside && w != 0.0) acc += w * v_[f];
    }
    return acc;
}

double GridFunction::integral() const {
    double s = parallel_sum(v_.size(), [&](std::size_t lo, std::size_t hi) {
        double a = 0.0;
        for (std::size_t i = lo; i < hi; ++i) a += v_[i];
        return a;
    });
    return s * lat_.cell_volume();
}

double GridFunction::integral_abs() const {
    double s = parallel_sum(v_.size(), [&](std::size_t lo, std::size_t hi) {
        double a = 0.0;
        for (std::size_t i = lo; i < hi; ++i) a += std::fabs(v_[i]);
        return a;
    });
    return s * lat_.cell_volume();
}

double GridFunction::lq_norm(double q) const {
    if (std::isinf(q)) return max_abs();
    if (!(q > 1.0)) throw std::domain_error("lq_norm: q must be > 1 or infinity");
    double s = parallel_sum(v_.size(), [&](std::size_t lo, std::size_t hi) {
        double a = 0.0;
        for (std::size_t i = lo; i < hi; ++i) a += std::pow(std::fabs(v_[i]), q);
        return a;
    });
    return std::pow(s * lat_.cell_volume(), 1.0 / q);
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

double GridFunction::inner(const GridFunction& g) const {
    if (!lat_.compatible(g.lat_)) throw std::invalid_argument("inner: lattice mismatch");
    double s = parallel_sum(v_.size(), [&](std::size_t lo, std::size_t hi) {
        double a = 0.0;
        for (std::size_t i = lo; i < hi; ++i) a += v_[i] * g.v_[i];
        return a;
    });
    return s * lat_.cell_volume();
}

GridFunction GridFunction::reflect() const {
    const auto& grp = lat_.group();
    GridFunction out(lat_);
    const int n = lat_.dim();
    parallel_for(lat_.size(), [&](std::size_t lo, std::size_t hi) {
        std::vector<double> x(n);
        for (std::size_t f = lo; f < hi; ++f) {
            lat_.site(f, x);
            Point xi = grp.invert(x);
            out.v_[f] = value_at(xi);
        }
    });
    out.refresh_support();
    return out;
}

GridFunction GridFunction::scale(double t) const {
    if (!(t > 0)) throw std::domain_error("scale: t must be positive");
    const auto& grp = lat_.group();
    const double jac = std::pow(t, -grp.homogeneous_dim());
    GridFunction out(lat_);
    const int n = lat_.dim();
    parallel_for(lat_.size(), [&](std::size_t lo, std::size_t hi) {
        std::vector<double> x(n);
        for (std::size_t f = lo; f < hi; ++f) {
            lat_.site(f, x);
            Point y = grp.dilate(1.0 / t, x);
            out.v_[f] = jac * value_at(y);
        }
    });
    out.refresh_support();
    double src = integral_abs();
    if (src > 0) {
        double kept = out.integral_abs();
        double escaped = std::max(0.0, 1.0 - kept / src);
        if (escaped > 1e-12)
            out.set_truncation({escaped, "scale(" + std::to_string(t) + ")"});
    }
    return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& g) {
    if (!lat_.compatible(g.lat_)) throw std::invalid_argument("grid +=: lattice mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += g.v_[i];
    refresh_support();
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& g) {
    if (!lat_.compatible(g.lat_)) throw std::invalid_argument("grid -=: lattice mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= g.v_[i];
    refresh_support();
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& x : v_) x *= c;
    if (c == 0.0) refresh_support();
    return *this;
}

std::size_t GridFunction::support_size() const {
    if (support_empty()) return 0;
    std::size_t s = 1;
    for (int j = 0; j < lat_.dim(); ++j)
        s *= static_cast<std::size_t>(shi_[j] - slo_[j] + 1);
    return s;
}

bool GridFunction::support_empty() const {
    return slo_.empty() || slo_[0] > shi_[0];
}

void GridFunction::refresh_support() {
    const int n = lat_.dim();
    const auto& m = lat_.extents();
    slo_.assign(n, 0);
    shi_.assign(n, -1);
    bool any = false;
    std::vector<int> idx(n);
    for (std::size_t f = 0; f < v_.size(); ++f) {
        if (v_[f] == 0.0) continue;
        lat_.unflat(f, idx);
        if (!any) {
            for (int j = 0; j < n; ++j) { slo_[j] = idx[j]; shi_[j] = idx[j]; }
            any = true;
        } else {
            for (int j = 0; j < n; ++j) {
                slo_[j] = std::min(slo_[j], idx[j]);
                shi_[j] = std::max(shi_[j], idx[j]);
            }
        }
    }
    if (!any) {
        for (int j = 0; j < n; ++j) { slo_[j] = m[j]; shi_[j] = -1; }
    }
}

namespace {
constexpr std::uint32_t kMagic = 0x534c4746;  // "SLGF"
constexpr std::uint32_t kVersion = 1;
}  // namespace

void GridFunction::save_binary(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("grid: cannot open " + path);
    auto put = [&](const void* p, std::size_t n) { out.write(static_cast<const char*>(p), n); };
    std::uint32_t n32 = static_cast<std::uint32_t>(lat_.dim());
    double R = lat_.half_width();
    put(&kMagic, 4);
    put(&kVersion, 4);
    put(&n32, 4);
    put(&R, 8);
    for (int j = 0; j < lat_.dim(); ++j) {
        std::uint32_t m = static_cast<std::uint32_t>(lat_.extents()[j]);
        double h = lat_.spacing()[j];
        put(&m, 4);
        put(&h, 8);
    }
    put(v_.data(), v_.size() * sizeof(double));
    if (!out) throw std::runtime_error("grid: short write to " + path);
}

GridFunction GridFunction::load_binary(const std::string& path,
                                       std::shared_ptr<const GroupStructure> group) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("grid: cannot open " + path);
    auto get = [&](void* p, std::size_t n) {
        in.read(static_cast<char*>(p), n);
        if (!in) throw std::runtime_error("grid: short read from " + path);
    };
    std::uint32_t magic, version, n32;
    double R;
    get(&magic, 4);
    get(&version, 4);
    if (magic != kMagic || version != kVersion)
        throw std::runtime_error("grid: bad header in " + path);
    get(&n32, 4);
    get(&R, 8);
    std::vector<int> m(n32);
    for (std::uint32_t j = 0; j < n32; ++j) {
        std::uint32_t mj;
        double hj;
        get(&mj, 4);
        get(&hj, 8);
        m[j] = static_cast<int>(mj);
    }
    Lattice lat(std::move(group), R, m);
    std::vector<double> vals(lat.size());
    get(vals.data(), vals.size() * sizeof(double));
    return GridFunction(std::move(lat), std::move(vals));
}

void GridFunction::dump_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("grid: cannot open " + path);
    const int n = lat_.dim();
    for (int j = 0; j < n; ++j) out << "x" << j + 1 << ",";
    out << "value\n";
    std::vector<double> x(n);
    char buf[64];
    for (std::size_t f = 0; f < v_.size(); ++f) {
        lat_.site(f, x);
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,", x[j]);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g\n", v_[f]);
        out << buf;
    }
}

}  // namespace singlab
