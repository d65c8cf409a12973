#include "loopmass/honeycomb_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <queue>
#include <span>
#include <thread>

#include "loopmass/error.hpp"

namespace loopmass {

Lattice::Lattice(const HoneycombDomain& dom) : dom_(dom) {
    if (dom.rows < 4 || dom.cols < 4) throw Error(ErrorKind::Range, "honeycomb domain needs rows, cols >= 4");
    stride_ = 2 * dom.cols + 2;
    index_.assign(std::size_t(stride_) * (dom.rows + 1), -1);
    auto touch = [&](int x, int y) {
        int& slot = index_[std::size_t(y) * stride_ + x];
        if (slot < 0) slot = 0;
    };
    for (int r = 0; r < dom.rows; ++r)
        for (int c = 0; c < dom.cols; ++c) {
            int xl = 2 * c + (r & 1);
            for (int dx = 0; dx <= 2; ++dx) {
                touch(xl + dx, r);
                touch(xl + dx, r + 1);
            }
        }
    // ids in (y, x) lexicographic order
    for (int y = 0; y <= dom.rows; ++y)
        for (int x = 0; x < stride_; ++x) {
            int& slot = index_[std::size_t(y) * stride_ + x];
            if (slot < 0) continue;
            slot = int(pos_.size());
            pos_.push_back({x, y});
        }
    adj_.resize(pos_.size());
    auto link = [&](int a, int b) {
        if (std::find(adj_[a].begin(), adj_[a].end(), b) != adj_[a].end()) return;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    };
    for (int r = 0; r < dom.rows; ++r)
        for (int c = 0; c < dom.cols; ++c) {
            auto v = face_vertices({r, c});
            for (int k = 0; k < 6; ++k) link(v[k], v[(k + 1) % 6]);
        }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Complex Lattice::face_center(const Face& f) const {
    return {(face_left(f) + 1) * std::sqrt(3.0) / 2, 1.5 * f.row};
}

int Lattice::vertex_at(int x, int y) const {
    if (x < 0 || x >= stride_ || y < 0 || y > dom_.rows) return -1;
    return index_[std::size_t(y) * stride_ + x];
}

bool Lattice::contains(const Face& f) const { return f.row >= 0 && f.row < dom_.rows && f.col >= 0 && f.col < dom_.cols; }

std::array<int, 6> Lattice::face_vertices(const Face& f) const {
    int xl = face_left(f), y = f.row;
    return {vertex_at(xl, y),         vertex_at(xl + 1, y),     vertex_at(xl + 2, y),
            vertex_at(xl + 2, y + 1), vertex_at(xl + 1, y + 1), vertex_at(xl, y + 1)};
}

std::vector<Face> Lattice::face_neighbours(const Face& f) const {
    int odd = f.row & 1;
    // rows above and below are shifted by one unit: columns col-1+odd and col+odd
    Face cand[6] = {{f.row, f.col - 1},           {f.row, f.col + 1},      {f.row + 1, f.col - 1 + odd},
                    {f.row + 1, f.col + odd},     {f.row - 1, f.col - 1 + odd}, {f.row - 1, f.col + odd}};
    std::vector<Face> out;
    for (auto& g : cand)
        if (contains(g)) out.push_back(g);
    return out;
}

std::pair<int, int> Lattice::shared_edge(const Face& a, const Face& b) const {
    auto va = face_vertices(a), vb = face_vertices(b);
    std::vector<int> common;
    for (int p : va)
        if (std::find(vb.begin(), vb.end(), p) != vb.end()) common.push_back(p);
    if (common.size() != 2) throw Error(ErrorKind::InvalidPath, "faces are not adjacent");
    return {common[0], common[1]};
}

int Lattice::face_distance(const Face& a, const Face& b) const {
    if (!contains(a) || !contains(b)) throw Error(ErrorKind::Range, "face outside the domain");
    std::vector<int> dist(std::size_t(face_count()), -1);
    auto id = [&](const Face& f) { return f.row * dom_.cols + f.col; };
    std::queue<Face> q;
    dist[id(a)] = 0;
    q.push(a);
    while (!q.empty()) {
        Face f = q.front();
        q.pop();
        if (f == b) return dist[id(f)];
        for (auto& g : face_neighbours(f))
            if (dist[id(g)] < 0) {
                dist[id(g)] = dist[id(f)] + 1;
                q.push(g);
            }
    }
    return -1;
}

double critical_weight(double n) {
    if (!(n >= 0 && n <= 2)) throw Error(ErrorKind::Range, "critical_weight: n outside [0, 2]");
    return 1 / std::sqrt(2 + std::sqrt(2 - n));
}

namespace {

using Path = std::span<const int>;

// ray to the right from the face centre; crossings are vertical polygon edges of that row
bool encloses_path(const Lattice& lat, Path p, const Face& f) {
    int xr = lat.face_left(f) + 2;
    bool in = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
        Vertex a = lat.position(p[k]), b = lat.position(p[(k + 1) % p.size()]);
        if (a.x == b.x && std::min(a.y, b.y) == f.row && a.x >= xr) in = !in;
    }
    return in;
}

unsigned mark_mask(const Lattice& lat, Path p, const MarkSet& marks) {
    unsigned m = 0;
    for (std::size_t i = 0; i < marks.size(); ++i)
        if (encloses_path(lat, p, marks[i])) m |= 1u << i;
    return m;
}

void check_marks(const Lattice& lat, const MarkSet& marks) {
    if (marks.size() != 2 && marks.size() != 4) throw Error(ErrorKind::Range, "mark set needs 2 or 4 faces");
    bool half = lat.domain().mode == BoundaryMode::HalfPlane;
    if (half && marks.size() != 2) throw Error(ErrorKind::Range, "half-plane mode takes 2 marks");
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (!lat.contains(marks[i])) throw Error(ErrorKind::MarkOnBoundary, "mark outside the domain");
        if (half && marks[i].row == 0) throw Error(ErrorKind::MarkOnBoundary, "mark touches the wall");
        for (std::size_t j = 0; j < i; ++j)
            if (marks[i] == marks[j]) throw Error(ErrorKind::Range, "marks must be distinct");
    }
}

SeparationPattern pattern_of(const Lattice& lat, unsigned mask, std::size_t k) {
    if (lat.domain().mode == BoundaryMode::HalfPlane) return SeparationPattern::boundary(std::uint8_t(mask));
    return SeparationPattern::bulk(std::uint8_t(mask), int(k));
}

int resolve_threads(int t) {
    if (t > 0) return t;
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Shared {
    std::uint64_t limit;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
};

// Anchored backtracking. The anchor is the lowest-ranked vertex of the cycle;
// the first step goes to the lower-ranked of its two cycle neighbours.
class Walker {
public:
    Walker(const Lattice& lat, int l_max, AnchorRule rule, Shared& sh)
        : lat_(lat), lmax_(l_max), sh_(sh), rank_(std::size_t(lat.vertex_count())),
          dist_(std::size_t(lat.vertex_count()), -1), on_path_(std::size_t(lat.vertex_count()), 0),
          usable_(std::size_t(lat.vertex_count()), 1) {
        int V = lat.vertex_count();
        for (int v = 0; v < V; ++v) {
            rank_[v] = rule == AnchorRule::MinVertex ? v : V - 1 - v;
            if (lat.domain().mode == BoundaryMode::HalfPlane && lat.position(v).y == 0) usable_[v] = 0;
        }
    }

    template <class Visit>
    void run(int anchor, Visit&& visit) {
        if (!usable_[anchor]) return;
        anchor_ = anchor;
        bfs();
        path_.clear();
        path_.push_back(anchor);
        on_path_[anchor] = 1;
        extend(visit);
        on_path_[anchor] = 0;
        for (int v : touched_) dist_[v] = -1;
        touched_.clear();
    }

    void flush() {
        if (local_ == 0) return;
        auto total = sh_.nodes.fetch_add(local_) + local_;
        local_ = 0;
        if (total > sh_.limit) {
            sh_.stop = true;
            throw Error(ErrorKind::Budget, "enumeration exceeded " + std::to_string(sh_.limit) + " nodes");
        }
        if (sh_.stop) throw Error(ErrorKind::Budget, "enumeration aborted");
    }

    std::uint64_t nodes() const { return counted_; }

private:
    bool allowed(int v) const { return usable_[v] && rank_[v] > rank_[anchor_]; }

    void bfs() {
        std::queue<int> q;
        dist_[anchor_] = 0;
        touched_.push_back(anchor_);
        q.push(anchor_);
        int reach = lmax_ / 2;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (dist_[u] >= reach) continue;
            for (int w : lat_.neighbours(u))
                if (dist_[w] < 0 && allowed(w)) {
                    dist_[w] = dist_[u] + 1;
                    touched_.push_back(w);
                    q.push(w);
                }
        }
    }

    template <class Visit>
    void extend(Visit& visit) {
        ++counted_;
        if (++local_ >= 4096) flush();
        int u = path_.back();
        int len = int(path_.size());  // edges so far = len - 1
        for (int w : lat_.neighbours(u)) {
            if (w == anchor_) {
                if (len >= 6 && rank_[path_[1]] < rank_[u]) visit(Path(path_));
                continue;
            }
            if (on_path_[w] || dist_[w] < 0 || !allowed(w)) continue;
            if (len + dist_[w] > lmax_) continue;
            path_.push_back(w);
            on_path_[w] = 1;
            extend(visit);
            on_path_[w] = 0;
            path_.pop_back();
        }
    }

    const Lattice& lat_;
    int lmax_;
    Shared& sh_;
    std::vector<int> rank_;
    std::vector<int> dist_;
    std::vector<char> on_path_;
    std::vector<char> usable_;
    std::vector<int> touched_;
    std::vector<int> path_;
    int anchor_ = 0;
    std::uint64_t local_ = 0;
    std::uint64_t counted_ = 0;
};

void check_lmax(int l_max) {
    if (l_max < 6) throw Error(ErrorKind::Range, "l_max must be >= 6");
}

// Acc: default-constructible, acc.add(path), acc.merge(other). Integer
// accumulators make the merged result independent of scheduling.
template <class Acc>
Acc parallel_enumerate(const Lattice& lat, int l_max, const EnumerationOptions& opt, const Acc& proto,
                       std::uint64_t* nodes_out) {
    check_lmax(l_max);
    Shared sh{opt.node_limit};
    int T = std::min(resolve_threads(opt.threads), lat.vertex_count());
    std::vector<Acc> parts(std::size_t(T), proto);
    std::vector<std::uint64_t> nodes(std::size_t(T), 0);
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&](int t) {
        try {
            Walker w(lat, l_max, opt.anchor, sh);
            for (int a; (a = next.fetch_add(1)) < lat.vertex_count() && !sh.stop;)
                w.run(a, [&](Path p) { parts[t].add(p); });
            w.flush();
            nodes[t] = w.nodes();
        } catch (...) {
            sh.stop = true;
            std::lock_guard lk(err_mu);
            if (!err) err = std::current_exception();
        }
    };
    if (T == 1) work(0);
    else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);
    Acc out = proto;
    for (auto& p : parts) out.merge(p);
    if (nodes_out) {
        *nodes_out = 0;
        for (auto n : nodes) *nodes_out += n;
    }
    return out;
}

struct Histogram {
    std::vector<std::uint64_t> h;
    void add(Path p) { ++h[p.size()]; }
    void merge(const Histogram& o) {
        for (std::size_t i = 0; i < h.size(); ++i) h[i] += o.h[i];
    }
};

// counts[mask][length]
struct MaskHistogram {
    const Lattice* lat;
    const MarkSet* marks;
    std::size_t L;
    std::vector<std::uint64_t> c;
    void add(Path p) { ++c[mark_mask(*lat, p, *marks) * L + p.size()]; }
    void merge(const MaskHistogram& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    }
};

double weighted(const std::vector<std::uint64_t>& by_length, double x) {
    // shortest loops last so the small terms are summed first
    double s = 0;
    for (std::size_t l = by_length.size(); l-- > 0;)
        if (by_length[l]) s += double(by_length[l]) * std::pow(x, double(l));
    return s;
}

}  // namespace

EnumerationStats enumerate_polygons(const Lattice& lat, int l_max, const std::function<void(const Polygon&)>& visit,
                                    const EnumerationOptions& opt) {
    check_lmax(l_max);
    Shared sh{opt.node_limit};
    Walker w(lat, l_max, opt.anchor, sh);
    EnumerationStats st;
    st.by_length.assign(std::size_t(l_max) + 1, 0);
    Polygon poly;
    // anchors in rank order
    std::vector<int> order(std::size_t(lat.vertex_count()));
    for (int v = 0; v < lat.vertex_count(); ++v)
        order[v] = opt.anchor == AnchorRule::MinVertex ? v : lat.vertex_count() - 1 - v;
    for (int a : order)
        w.run(a, [&](Path p) {
            poly.vertices.assign(p.begin(), p.end());
            ++st.by_length[p.size()];
            ++st.polygons;
            if (visit) visit(poly);
        });
    w.flush();
    st.nodes = w.nodes();
    return st;
}

EnumerationStats count_polygons(const Lattice& lat, int l_max, const EnumerationOptions& opt) {
    EnumerationStats st;
    Histogram proto{std::vector<std::uint64_t>(std::size_t(std::max(l_max, 0)) + 1, 0)};
    auto h = parallel_enumerate(lat, l_max, opt, proto, &st.nodes);
    st.by_length = h.h;
    for (auto c : st.by_length) st.polygons += c;
    return st;
}

std::vector<std::uint64_t> brute_force_cycle_histogram(const Lattice& lat, int l_max) {
    // every directed closed walk without repeated vertices, from every start;
    // each cycle of length l is seen 2l times
    int V = lat.vertex_count();
    std::vector<std::uint64_t> raw(std::size_t(l_max) + 1, 0);
    std::vector<char> on(std::size_t(V), 0);
    bool half = lat.domain().mode == BoundaryMode::HalfPlane;
    auto ok = [&](int v) { return !(half && lat.position(v).y == 0); };
    std::vector<int> path;
    std::function<void(int)> dfs = [&](int start) {
        int u = path.back();
        for (int w : lat.neighbours(u)) {
            if (!ok(w)) continue;
            if (w == start && path.size() >= 3) {
                ++raw[path.size()];
                continue;
            }
            if (on[w] || int(path.size()) >= l_max) continue;
            on[w] = 1;
            path.push_back(w);
            dfs(start);
            path.pop_back();
            on[w] = 0;
        }
    };
    for (int s = 0; s < V; ++s) {
        if (!ok(s)) continue;
        path.assign(1, s);
        on[s] = 1;
        dfs(s);
        on[s] = 0;
    }
    for (std::size_t l = 0; l < raw.size(); ++l)
        if (raw[l]) raw[l] /= 2 * l;
    return raw;
}

bool encloses(const Lattice& lat, const Polygon& poly, const Face& f) { return encloses_path(lat, poly.vertices, f); }

std::vector<Face> interior_faces(const Lattice& lat, const Polygon& poly) {
    std::vector<Face> out;
    for (int r = 0; r < lat.domain().rows; ++r)
        for (int c = 0; c < lat.domain().cols; ++c)
            if (encloses(lat, poly, {r, c})) out.push_back({r, c});
    return out;
}

SeparationPattern classify(const Lattice& lat, const Polygon& poly, const MarkSet& marks) {
    check_marks(lat, marks);
    return pattern_of(lat, mark_mask(lat, poly.vertices, marks), marks.size());
}

int crossing_parity(const Lattice& lat, const Polygon& poly, const std::vector<Face>& path) {
    if (path.size() < 1) throw Error(ErrorKind::InvalidPath, "empty path");
    for (auto& f : path)
        if (!lat.contains(f)) throw Error(ErrorKind::InvalidPath, "path leaves the domain");
    const auto& v = poly.vertices;
    auto on_poly = [&](int a, int b) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            int p = v[k], q = v[(k + 1) % v.size()];
            if ((p == a && q == b) || (p == b && q == a)) return true;
        }
        return false;
    };
    int crossings = 0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        auto [a, b] = lat.shared_edge(path[k - 1], path[k]);
        if (on_poly(a, b)) ++crossings;
    }
    return crossings % 2 ? -1 : 1;
}

ClassMassTable class_masses(const Lattice& lat, const MarkSet& marks, int l_max, double n,
                            const EnumerationOptions& opt) {
    check_marks(lat, marks);
    double x = critical_weight(n);
    std::size_t L = std::size_t(std::max(l_max, 0)) + 1;
    std::size_t masks = std::size_t(1) << marks.size();
    MaskHistogram proto{&lat, &marks, L, std::vector<std::uint64_t>(masks * L, 0)};
    auto h = parallel_enumerate(lat, l_max, opt, proto, nullptr);

    ClassMassTable t;
    t.x_c = x;
    t.l_max = l_max;
    bool half = lat.domain().mode == BoundaryMode::HalfPlane;
    auto all = half ? SeparationPattern::all_boundary() : SeparationPattern::all_bulk(int(marks.size()));
    for (auto& p : all) t.classes[p].by_length.assign(L, 0);
    for (std::size_t m = 0; m < masks; ++m) {
        auto& e = t.classes[pattern_of(lat, unsigned(m), marks.size())];
        for (std::size_t l = 0; l < L; ++l) {
            e.by_length[l] += h.c[m * L + l];
            e.count += h.c[m * L + l];
            t.total += h.c[m * L + l];
        }
    }
    for (auto& [p, e] : t.classes) e.mass = weighted(e.by_length, x);
    return t;
}

GrowthEstimate growth_constant(int l_max, const EnumerationOptions& opt) {
    check_lmax(l_max);
    // domain wide enough that no polygon anchored at the two chosen vertices is clipped
    HoneycombDomain dom{l_max / 2 + 2, l_max / 2 + 4, BoundaryMode::Free};
    Lattice lat(dom);
    int cx = 2 * (dom.cols / 2);
    // one vertex of each sublattice
    int down = lat.vertex_at(cx, 1), up = lat.vertex_at(cx + 1, 1);
    GrowthEstimate g;
    g.per_cell.assign(std::size_t(l_max) + 1, 0);
    for (int anchor : {down, up}) {
        Shared sh{opt.node_limit};
        Walker w(lat, l_max, AnchorRule::MinVertex, sh);
        w.run(anchor, [&](Path p) { ++g.per_cell[p.size()]; });
        w.flush();
    }
    // p_l ~ mu^l l^{-5/2} with a period-four wobble (singularities at +-i x_c),
    // so ratios are taken four steps apart with the known power divided out
    g.estimates.assign(std::size_t(l_max) + 1, 0.0);
    for (int l = 10; l <= l_max; l += 2) {
        double a = double(g.per_cell[l]), b = double(g.per_cell[l - 4]);
        if (a > 0 && b > 0) g.estimates[l] = std::pow(a / b * std::pow(double(l) / (l - 4), 2.5), 0.25);
    }
    int top = l_max % 2 ? l_max - 1 : l_max;
    double a = g.estimates[top], b = g.estimates[top - 2];
    if (!(a > 0 && b > 0)) throw Error(ErrorKind::InsufficientData, "too few polygon lengths for extrapolation");
    g.mu = (a + b) / 2;
    return g;
}

SlopeFit fit_log_line(const std::vector<int>& distances, const std::vector<double>& masses) {
    std::size_t m = distances.size();
    if (m < 3 || masses.size() != m) throw Error(ErrorKind::InsufficientData, "slope fit needs >= 3 distances");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += std::log(double(distances[i]));
        sy += masses[i];
    }
    double mx = sx / m, my = sy / m, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double dx = std::log(double(distances[i])) - mx;
        sxx += dx * dx;
        sxy += dx * (masses[i] - my);
    }
    if (!(sxx > 0)) throw Error(ErrorKind::InsufficientData, "distances must differ");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double r = masses[i] - f.intercept - f.slope * std::log(double(distances[i]));
        ssr += r * r;
    }
    f.stderr = std::sqrt(ssr / double(m - 2) / sxx);
    f.distances = distances;
    f.masses = masses;
    return f;
}

SlopeFit fit_two_point_slope(const Lattice& lat, int l_max, const std::vector<int>& distances, double n,
                             const EnumerationOptions& opt) {
    const auto& dom = lat.domain();
    if (dom.mode != BoundaryMode::Free) throw Error(ErrorKind::Range, "slope fit runs in the free domain");
    if (distances.size() < 3) throw Error(ErrorKind::InsufficientData, "slope fit needs >= 3 distances");
    int r0 = dom.rows / 2;
    std::vector<MarkSet> pairs;
    for (int d : distances) {
        int c1 = (dom.cols - 1 - d) / 2, c2 = c1 + d;
        bool inside = d >= 1 && r0 >= 3 && dom.rows - 1 - r0 >= 3 && c1 >= 3 && dom.cols - 1 - c2 >= 3;
        if (!inside) throw Error(ErrorKind::InsufficientData, "distance " + std::to_string(d) + " leaves the bulk region");
        pairs.push_back({{r0, c1}, {r0, c2}});
    }
    std::size_t L = std::size_t(l_max) + 1, P = pairs.size();
    struct Acc {
        const Lattice* lat;
        const std::vector<MarkSet>* pairs;
        std::size_t L;
        std::vector<std::uint64_t> c;  // separating counts [pair][length]
        void add(Path p) {
            for (std::size_t i = 0; i < pairs->size(); ++i) {
                const auto& mk = (*pairs)[i];
                if (encloses_path(*lat, p, mk[0]) != encloses_path(*lat, p, mk[1])) ++c[i * L + p.size()];
            }
        }
        void merge(const Acc& o) {
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        }
    };
    Acc proto{&lat, &pairs, L, std::vector<std::uint64_t>(P * L, 0)};
    auto acc = parallel_enumerate(lat, l_max, opt, proto, nullptr);
    double x = critical_weight(n);
    std::vector<double> masses;
    for (std::size_t i = 0; i < P; ++i)
        masses.push_back(weighted({acc.c.begin() + std::ptrdiff_t(i * L), acc.c.begin() + std::ptrdiff_t((i + 1) * L)}, x));
    return fit_log_line(distances, masses);
}

}  // namespace loopmass
