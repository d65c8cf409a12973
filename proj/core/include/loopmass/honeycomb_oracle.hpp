#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "loopmass/mu_mass.hpp"

namespace loopmass {

enum class BoundaryMode { Free, HalfPlane };

// Brick-wall embedding: face (r, c) is the 2x1 cell with corners
// (2c + r%2, r) and (2c + r%2 + 2, r + 1); vertical edges sit at x + y even.
// In HalfPlane mode the line y = 0 is the wall and polygons may not touch it.
struct HoneycombDomain {
    int rows = 0;
    int cols = 0;
    BoundaryMode mode = BoundaryMode::Free;
};

struct Face {
    int row = 0;
    int col = 0;
    bool operator==(const Face&) const = default;
};

struct Vertex {
    int x = 0;
    int y = 0;
};

class Lattice {
public:
    explicit Lattice(const HoneycombDomain& dom);

    const HoneycombDomain& domain() const { return dom_; }
    int vertex_count() const { return int(pos_.size()); }
    int face_count() const { return dom_.rows * dom_.cols; }
    Vertex position(int v) const { return pos_[v]; }
    // -1 if absent
    int vertex_at(int x, int y) const;
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    bool contains(const Face& f) const;
    int face_left(const Face& f) const { return 2 * f.col + (f.row & 1); }
    // centre in the regular embedding, unit edge length
    Complex face_center(const Face& f) const;
    // the six boundary vertices, counter-clockwise from the lower left corner
    std::array<int, 6> face_vertices(const Face& f) const;
    std::vector<Face> face_neighbours(const Face& f) const;
    // vertices of the edge shared by two adjacent faces
    std::pair<int, int> shared_edge(const Face& a, const Face& b) const;
    // graph distance in the dual (face adjacency) graph of the domain
    int face_distance(const Face& a, const Face& b) const;

private:
    HoneycombDomain dom_;
    int stride_ = 0;
    std::vector<int> index_;
    std::vector<Vertex> pos_;
    std::vector<std::vector<int>> adj_;
};

struct Polygon {
    std::vector<int> vertices;  // cyclic, first = anchor
    int length() const { return int(vertices.size()); }
};

using MarkSet = std::vector<Face>;

enum class AnchorRule { MinVertex, MaxVertex };

struct EnumerationOptions {
    std::uint64_t node_limit = 1'000'000'000;
    int threads = 1;  // 0 -> hardware concurrency
    AnchorRule anchor = AnchorRule::MinVertex;
};

struct EnumerationStats {
    std::uint64_t nodes = 0;
    std::uint64_t polygons = 0;
    std::vector<std::uint64_t> by_length;  // index = length
};

double critical_weight(double n);

// Serial streaming enumeration in deterministic order.
EnumerationStats enumerate_polygons(const Lattice& lat, int l_max, const std::function<void(const Polygon&)>& visit,
                                    const EnumerationOptions& opt = {});
// Length histogram only; parallel by anchor.
EnumerationStats count_polygons(const Lattice& lat, int l_max, const EnumerationOptions& opt = {});

// exhaustive DFS over simple cycles, no pruning; small domains only
std::vector<std::uint64_t> brute_force_cycle_histogram(const Lattice& lat, int l_max);

bool encloses(const Lattice& lat, const Polygon& poly, const Face& f);
std::vector<Face> interior_faces(const Lattice& lat, const Polygon& poly);
SeparationPattern classify(const Lattice& lat, const Polygon& poly, const MarkSet& marks);
// path: faces from one mark to another, consecutive entries adjacent
int crossing_parity(const Lattice& lat, const Polygon& poly, const std::vector<Face>& path);

struct ClassEntry {
    std::uint64_t count = 0;
    double mass = 0;
    std::vector<std::uint64_t> by_length;
};

struct ClassMassTable {
    double x_c = 0;
    int l_max = 0;
    std::uint64_t total = 0;
    std::map<SeparationPattern, ClassEntry> classes;
};

ClassMassTable class_masses(const Lattice& lat, const MarkSet& marks, int l_max, double n,
                            const EnumerationOptions& opt = {});

struct GrowthEstimate {
    double mu = 0;
    std::vector<std::uint64_t> per_cell;  // polygons per unit cell by length
    std::vector<double> estimates;        // successive extrapolants, by length
};

// Ratio extrapolation of translation-class polygon counts up to l_max.
GrowthEstimate growth_constant(int l_max, const EnumerationOptions& opt = {});

struct SlopeFit {
    double slope = 0;
    double stderr = 0;
    double intercept = 0;
    std::vector<int> distances;
    std::vector<double> masses;
};

// Separating mass of horizontal mark pairs centred in the domain, fit against ln(distance).
SlopeFit fit_two_point_slope(const Lattice& lat, int l_max, const std::vector<int>& distances, double n = 0,
                             const EnumerationOptions& opt = {});
SlopeFit fit_log_line(const std::vector<int>& distances, const std::vector<double>& masses);

}  // namespace loopmass
