#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopmass/correlators.hpp"

namespace loopmass {

// Marked points enclosed by a loop, as a bitmask over points 1..k (bit i-1).
// Bulk patterns are reduced modulo complement to the representative that
// contains point 1; boundary patterns (points 1, 2) are kept as they are.
// Bulk patterns default to four points; two-point bulk patterns are "1|2" and "12|".
class SeparationPattern {
public:
    static SeparationPattern bulk(std::uint8_t enclosed_mask, int points = 4);
    static SeparationPattern boundary(std::uint8_t enclosed_mask);
    // "12|34", "13|24", "14|23", or a set like "{1,3}"
    static SeparationPattern parse_bulk(const std::string& text);

    std::uint8_t mask() const { return mask_; }
    bool is_boundary() const { return boundary_; }
    int points() const { return points_; }
    // a loop separating the marks into two pairs
    bool two_sided() const;
    std::string label() const;
    bool operator==(const SeparationPattern&) const = default;
    auto operator<=>(const SeparationPattern&) const = default;

    static std::vector<SeparationPattern> all_bulk(int points = 4);
    static std::vector<SeparationPattern> all_boundary();

private:
    SeparationPattern(std::uint8_t m, bool b, int k) : mask_(m), boundary_(b), points_(std::uint8_t(k)) {}
    std::uint8_t mask_;
    bool boundary_;
    std::uint8_t points_;
};

struct MassValue {
    double value;
    SeparationPattern pattern;
};

double q_prefactor();
double q_boundary_prefactor();

Complex q_two_variable(Complex u, Complex v);
double q_fn(Complex u, Complex v);
double q_fn(Complex eta);

MassValue w_bulk(SeparationPattern pattern, const BulkConfig& cfg);
double w_from_correlators(SeparationPattern pattern, const BulkConfig& cfg, double n_small,
                          const Normalization& norm = {});
double two_point_log_mass(Complex z1, Complex z2, double a = 1.0);

MassValue w_boundary(Complex z1, Complex z2);
double w_boundary_at(double eta);

struct Spin2Options {
    double eps = 0.0;  // 0 -> 1e-2 of the minimal separation
    double ratio = 2.0;
    int nodes = 256;
    bool extrapolate = true;
};

// Normalised angular Fourier integrals before the eps^-k rescaling.
Complex spin2_angular(Complex z1, Complex z3, Complex z4, double eps, int nodes);
Complex ttilde_angular(Complex z1, Complex z3, double eps, int nodes);

Complex spin2_component(Complex z1, Complex z3, Complex z4, const Spin2Options& opt = {});
Complex ttilde_two_point(Complex z1, Complex z3, const Spin2Options& opt = {});

}  // namespace loopmass
