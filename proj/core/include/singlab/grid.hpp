#pragma once

// Uniform lattice over the box [-R, R]^n and real-valued grid functions on it.
// Site coordinates are x_j = (i_j - m_j/2) h_j with h_j = 2R/m_j, so the
// origin is always a lattice site. Values are extended by zero outside the
// box; truncating operations carry an escaped-mass note.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "singlab/group.hpp"

namespace singlab {

class Lattice {
public:
    Lattice() = default;
    Lattice(std::shared_ptr<const GroupStructure> group, double R, std::vector<int> sites_per_axis);

    const GroupStructure& group() const { return *group_; }
    std::shared_ptr<const GroupStructure> group_ptr() const { return group_; }
    int dim() const { return n_; }
    double half_width() const { return R_; }
    const std::vector<int>& extents() const { return m_; }
    const std::vector<double>& spacing() const { return h_; }
    double cell_volume() const { return vol_; }
    std::size_t size() const { return size_; }

    double coord(int axis, int i) const { return (i - m_[axis] / 2) * h_[axis]; }
    std::size_t flat(std::span<const int> idx) const;
    void unflat(std::size_t f, std::span<int> idx) const;
    void site(std::size_t f, std::span<double> x) const;
    std::size_t origin() const;

    bool compatible(const Lattice& o) const;

private:
    std::shared_ptr<const GroupStructure> group_;
    int n_ = 0;
    double R_ = 0.0;
    std::vector<int> m_;
    std::vector<double> h_;
    std::vector<std::size_t> stride_;
    double vol_ = 0.0;
    std::size_t size_ = 0;
};

struct TruncationNote {
    double escaped_mass_fraction = 0.0;
    std::string context;
};

class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(Lattice lat) : lat_(std::move(lat)), v_(lat_.size(), 0.0) {}
    GridFunction(Lattice lat, std::vector<double> values);

    // Point-samples fn at every lattice site (parallel, deterministic).
    static GridFunction sample(const Lattice& lat,
                               const std::function<double(std::span<const double>)>& fn);

    const Lattice& lattice() const { return lat_; }
    std::span<const double> values() const { return v_; }
    std::span<double> values() { return v_; }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }

    // Multilinear interpolation; zero outside the box.
    double value_at(std::span<const double> x) const;

    double integral() const;             // vol * sum
    double integral_abs() const;
    double lq_norm(double q) const;      // q in (1, inf]; throws domain_error otherwise
    double max_abs() const;
    double l2_norm() const { return lq_norm(2.0); }
    double inner(const GridFunction& g) const;  // vol * sum f g

    GridFunction reflect() const;        // x -> f(x^{-1}) by interpolation
    GridFunction scale(double t) const;  // Delta[t] f = t^-Q f(t^-1 o x)

    GridFunction& operator+=(const GridFunction& g);
    GridFunction& operator-=(const GridFunction& g);
    GridFunction& operator*=(double c);
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }

    // Support bounding box in site indices, per axis [lo, hi] inclusive;
    // empty support gives lo > hi. Cached; call refresh_support after raw writes.
    const std::vector<int>& support_lo() const { return slo_; }
    const std::vector<int>& support_hi() const { return shi_; }
    std::size_t support_size() const;
    bool support_empty() const;
    void refresh_support();

    const std::optional<TruncationNote>& truncation() const { return trunc_; }
    void set_truncation(TruncationNote n) { trunc_ = std::move(n); }

    // Binary layout: magic, version, n, R, per-axis extent+spacing, then the
    // row-major 64-bit float payload. CSV dump: one site per row.
    void save_binary(const std::string& path) const;
    static GridFunction load_binary(const std::string& path,
                                    std::shared_ptr<const GroupStructure> group);
    void dump_csv(const std::string& path) const;

private:
    Lattice lat_;
    std::vector<double> v_;
    std::vector<int> slo_, shi_;
    std::optional<TruncationNote> trunc_;
};

}  // namespace singlab
