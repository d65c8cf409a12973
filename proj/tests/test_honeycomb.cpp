#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "loopmass/error.hpp"
#include "loopmass/honeycomb_oracle.hpp"

using namespace loopmass;

namespace {

std::vector<Polygon> all_polygons(const Lattice& lat, int lmax, EnumerationOptions opt = {}) {
    std::vector<Polygon> v;
    enumerate_polygons(lat, lmax, [&](const Polygon& p) { v.push_back(p); }, opt);
    return v;
}

// random face walk from a to b inside the domain
std::vector<Face> random_path(const Lattice& lat, Face a, Face b, std::mt19937_64& rng) {
    std::vector<Face> path{a};
    Face cur = a;
    std::uniform_real_distribution<double> u(0, 1);
    while (!(cur == b)) {
        auto nb = lat.face_neighbours(cur);
        Face next = nb[std::size_t(u(rng) * nb.size())];
        // biased toward b so the walk terminates quickly
        if (u(rng) < 0.5)
            for (auto& f : nb)
                if (lat.face_distance(f, b) < lat.face_distance(cur, b)) next = f;
        path.push_back(next);
        cur = next;
    }
    return path;
}

}  // namespace

TEST_CASE("critical weight") {
    CHECK(critical_weight(2) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(critical_weight(1) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(critical_weight(0) == doctest::Approx(0.5411961).epsilon(1e-7));
    CHECK_THROWS_AS(critical_weight(2.5), Error);
}

TEST_CASE("lattice geometry") {
    Lattice lat({6, 6});
    CHECK(lat.face_count() == 36);
    for (int v = 0; v < lat.vertex_count(); ++v) {
        CHECK(lat.neighbours(v).size() >= 2);
        CHECK(lat.neighbours(v).size() <= 3);
    }
    Face f{2, 2};
    CHECK(lat.face_neighbours(f).size() == 6);
    for (auto& g : lat.face_neighbours(f)) {
        CHECK(lat.face_distance(f, g) == 1);
        CHECK(std::abs(std::abs(lat.face_center(f) - lat.face_center(g)) - std::sqrt(3.0)) < 1e-12);
    }
    CHECK(lat.face_distance({2, 0}, {2, 4}) == 4);
    CHECK_THROWS_AS(Lattice({3, 6}), Error);
}

TEST_CASE("hexagons are the only length-6 polygons") {
    Lattice lat({6, 6});
    auto st = count_polygons(lat, 6);
    CHECK(st.polygons == 36);
    CHECK(st.by_length[6] == 36);
}

TEST_CASE("enumeration against brute force") {
    Lattice lat({4, 4});
    auto brute = brute_force_cycle_histogram(lat, 18);
    auto st = enumerate_polygons(lat, 18, nullptr);
    for (int l = 0; l <= 18; ++l) CHECK(st.by_length[l] == brute[l]);
    Lattice half({4, 5, BoundaryMode::HalfPlane});
    auto bh = brute_force_cycle_histogram(half, 16);
    auto sh = count_polygons(half, 16);
    for (int l = 0; l <= 16; ++l) CHECK(sh.by_length[l] == bh[l]);
}

TEST_CASE("infinite-lattice counts per cell") {
    auto g = growth_constant(22);
    std::uint64_t known[] = {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 3, 0, 2, 0, 12, 0, 18, 0, 65, 0, 138, 0, 432};
    for (int l = 0; l <= 22; ++l) CHECK(g.per_cell[l] == known[l]);
}

TEST_CASE("growth constant against the closed form") {
    auto g = growth_constant(28);
    CHECK(std::abs(1 / g.mu - critical_weight(0)) / critical_weight(0) < 0.02);
}

TEST_CASE("polygon validity") {
    Lattice lat({6, 6});
    for (auto& p : all_polygons(lat, 14)) {
        CHECK(p.length() <= 14);
        CHECK(p.length() % 2 == 0);
        std::set<int> seen(p.vertices.begin(), p.vertices.end());
        CHECK(seen.size() == p.vertices.size());
        for (std::size_t k = 0; k < p.vertices.size(); ++k) {
            auto& nb = lat.neighbours(p.vertices[k]);
            int nxt = p.vertices[(k + 1) % p.vertices.size()];
            CHECK(std::find(nb.begin(), nb.end(), nxt) != nb.end());
        }
        CHECK_FALSE(interior_faces(lat, p).empty());
    }
}

TEST_CASE("anchor rules and thread counts agree") {
    Lattice lat({7, 8});
    auto a = count_polygons(lat, 16, {1'000'000'000, 1, AnchorRule::MinVertex});
    auto b = count_polygons(lat, 16, {1'000'000'000, 1, AnchorRule::MaxVertex});
    auto c = count_polygons(lat, 16, {1'000'000'000, 3, AnchorRule::MinVertex});
    CHECK(a.by_length == b.by_length);
    CHECK(a.by_length == c.by_length);
    MarkSet marks{{2, 2}, {2, 5}, {5, 5}, {5, 2}};
    auto t1 = class_masses(lat, marks, 16, 0, {1'000'000'000, 1});
    auto t4 = class_masses(lat, marks, 16, 0, {1'000'000'000, 4});
    for (auto& [p, e] : t1.classes) CHECK(e.mass == t4.classes.at(p).mass);
}

TEST_CASE("budget guard") {
    Lattice lat({8, 8});
    CHECK_THROWS_AS(count_polygons(lat, 20, {1000, 1}), Error);
    try {
        count_polygons(lat, 20, {1000, 2});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Budget);
    }
    CHECK_THROWS_AS(count_polygons(lat, 4), Error);
}

TEST_CASE("classification") {
    Lattice lat({8, 8});
    MarkSet marks{{3, 3}, {3, 5}, {5, 5}, {5, 3}};
    Polygon hex;
    auto fv = lat.face_vertices({3, 3});
    hex.vertices.assign(fv.begin(), fv.end());
    CHECK(classify(lat, hex, marks) == SeparationPattern::bulk(0b0001));
    CHECK(classify(lat, hex, marks).label() == "1|234");
    auto polys = all_polygons(lat, 16);
    bool saw12 = false;
    for (auto& p : polys) {
        unsigned m = 0;
        for (int i = 0; i < 4; ++i)
            if (encloses(lat, p, marks[i])) m |= 1u << i;
        if (m == 0b0011) {
            saw12 = true;
            CHECK(classify(lat, p, marks) == SeparationPattern::parse_bulk("12|34"));
        }
        // inside and outside swapped
        CHECK(SeparationPattern::bulk(std::uint8_t(~m & 0xF)) == classify(lat, p, marks));
    }
    CHECK(saw12);
    CHECK_THROWS_AS(classify(lat, hex, {{3, 3}, {9, 9}}), Error);
    CHECK_THROWS_AS(classify(lat, hex, {{3, 3}, {3, 3}}), Error);
}

TEST_CASE("parity equals enclosure for every polygon") {
    Lattice lat({7, 7});
    MarkSet marks{{2, 2}, {2, 4}, {4, 4}, {4, 2}};
    std::mt19937_64 rng(41);
    std::vector<std::vector<Face>> paths[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = 0; k < 3; ++k) paths[i][j].push_back(random_path(lat, marks[i], marks[j], rng));
    for (auto& p : all_polygons(lat, 16)) {
        bool in[4];
        for (int i = 0; i < 4; ++i) in[i] = encloses(lat, p, marks[i]);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (auto& path : paths[i][j]) {
                    int par = crossing_parity(lat, p, path);
                    REQUIRE(par == (in[i] != in[j] ? -1 : 1));
                }
        int w = crossing_parity(lat, p, paths[0][1][0]) * crossing_parity(lat, p, paths[2][3][0]);
        auto cls = classify(lat, p, marks);
        int bits12 = __builtin_popcount(cls.mask() & 0b0011) % 2;
        int bits34 = __builtin_popcount(cls.mask() & 0b1100) % 2;
        CHECK(w == (bits12 ? -1 : 1) * (bits34 ? -1 : 1));
    }
}

TEST_CASE("random path pairs give equal parity") {
    Lattice lat({8, 8});
    auto polys = all_polygons(lat, 18);
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::size_t> pick(0, polys.size() - 1);
    std::uniform_int_distribution<int> rc(0, 7);
    for (int s = 0; s < 1000; ++s) {
        Face a{rc(rng), rc(rng)}, b{rc(rng), rc(rng)};
        auto& p = polys[pick(rng)];
        CHECK(crossing_parity(lat, p, random_path(lat, a, b, rng)) ==
              crossing_parity(lat, p, random_path(lat, a, b, rng)));
    }
    CHECK_THROWS_AS(crossing_parity(lat, polys[0], {{0, 0}, {5, 5}}), Error);
}

TEST_CASE("class masses") {
    Lattice lat({8, 8});
    MarkSet two{{3, 3}, {3, 4}};
    auto t = class_masses(lat, two, 6, 0);
    double x = critical_weight(0);
    auto sep = SeparationPattern::bulk(0b01, 2);
    CHECK(t.classes.at(sep).mass >= std::pow(x, 6));
    CHECK(t.classes.size() == 2);
    MarkSet marks{{2, 2}, {2, 5}, {5, 5}, {5, 2}};
    double prev[8] = {};
    for (int l : {8, 12, 16}) {
        auto tb = class_masses(lat, marks, l, 0);
        CHECK(tb.classes.size() == 8);
        std::uint64_t sum = 0;
        int k = 0;
        for (auto& [p, e] : tb.classes) {
            sum += e.count;
            CHECK(e.mass >= prev[k]);
            prev[k++] = e.mass;
        }
        CHECK(sum == tb.total);
        CHECK(sum == count_polygons(lat, l).polygons);
    }
}

TEST_CASE("rotation by pi is a lattice symmetry") {
    Lattice lat({8, 8});
    MarkSet marks{{2, 1}, {2, 5}, {5, 4}, {4, 2}};
    MarkSet rot;
    for (auto& f : marks) rot.push_back({7 - f.row, 7 - f.col});
    auto a = class_masses(lat, marks, 16, 0.5), b = class_masses(lat, rot, 16, 0.5);
    for (auto& [p, e] : a.classes) {
        CHECK(e.count == b.classes.at(p).count);
        CHECK(e.mass == b.classes.at(p).mass);
    }
}

TEST_CASE("half-plane mode") {
    Lattice lat({6, 6, BoundaryMode::HalfPlane});
    auto t = class_masses(lat, {{2, 2}, {3, 3}}, 12, 0);
    CHECK(t.classes.size() == 4);
    for (auto& p : all_polygons(lat, 12))
        for (int v : p.vertices) CHECK(lat.position(v).y > 0);
    CHECK_THROWS_AS(class_masses(lat, {{0, 2}, {3, 3}}, 12, 0), Error);
    // rows 1..: 5x6 faces minus nothing; hexagons in row 0 touch the wall
    CHECK(count_polygons(lat, 6).polygons == 30);
}

TEST_CASE("slope fit basics") {
    Lattice lat({12, 14});
    auto f = fit_two_point_slope(lat, 16, {2, 3, 4, 5});
    CHECK(f.slope > 0);
    CHECK(f.masses.size() == 4);
    CHECK_THROWS_AS(fit_two_point_slope(lat, 16, {2, 3}), Error);
    CHECK_THROWS_AS(fit_two_point_slope(lat, 16, {2, 3, 12}), Error);
    auto g = fit_log_line({1, 2, 4}, {0.0, std::log(2.0), std::log(4.0)});
    CHECK(g.slope == doctest::Approx(1.0).epsilon(1e-14));
}
