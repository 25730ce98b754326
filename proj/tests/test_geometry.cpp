#include "wmerge/geometry2d.hpp"
#include "wmerge/instancegen.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace wmerge;

namespace {

std::vector<Point2> lp_visible(const std::vector<Point2>& pts) {
    std::vector<Point2> out;
    for (const auto& p : pts) {
        std::vector<DistanceVector> others;
        for (const auto& q : pts)
            if (q != p) others.push_back({q.x, q.y});
        if (feasible(minimality_system({p.x, p.y}, others))) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Separation, BasicCases) {
    auto l = Line2::through({3, 0}, {0, 3});
    EXPECT_TRUE(separates_from_origin(l, {2, 2}));
    EXPECT_FALSE(separates_from_origin(l, {1, 1}));
    EXPECT_FALSE(separates_from_origin(l, {0, 0}));
    EXPECT_FALSE(separates_from_origin(l, {1, 2}));  // on the line
    EXPECT_THROW(separates_from_origin(Line2{0, 0, 1}, {1, 1}), ValidationError);
    EXPECT_THROW(Line2::through({1, 1}, {1, 1}), ValidationError);
}

TEST(VisibleHull, Examples) {
    EXPECT_EQ(visible_hull({{3, 0}, {2, 2}, {0, 3}}), (std::vector<Point2>{{0, 3}, {3, 0}}));
    EXPECT_EQ(visible_hull({{3, 0}, {1, 1}, {0, 3}}), (std::vector<Point2>{{0, 3}, {1, 1}, {3, 0}}));
    EXPECT_EQ(visible_hull({{5, 7}}), (std::vector<Point2>{{5, 7}}));
    // collinear middle point stays, axis-parallel neighbours do not
    EXPECT_EQ(visible_hull({{2, 0}, {1, 1}, {0, 2}, {2, 1}, {0, 3}}), (std::vector<Point2>{{0, 2}, {1, 1}, {2, 0}}));
    EXPECT_THROW(visible_hull({}), ValidationError);
}

TEST(VisibleHull, MatchesLpOnSmallGrids) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 1500; ++trial) {
        std::vector<Point2> pts(1 + rng() % 7);
        for (auto& p : pts) p = {static_cast<std::int64_t>(rng() % 9), static_cast<std::int64_t>(rng() % 9)};
        auto hull = visible_hull(pts);
        EXPECT_EQ(hull, lp_visible(pts));
        std::vector<std::int64_t> xs;
        for (const auto& p : hull) xs.push_back(p.x);
        std::sort(xs.begin(), xs.end());
        EXPECT_EQ(std::unique(xs.begin(), xs.end()), xs.end());
    }
}

TEST(Algorithm1, ThreePointInstances) {
    auto a = realize({{{3, 0}, {2, 2}, {0, 3}}});
    EXPECT_EQ(algorithm1(a, DistanceKind::hamming()).size(), 2u);
    EXPECT_EQ(algorithm1(a, DistanceKind::hamming()),
              merge_scheme(a, WeightScheme::all_positive(), DistanceKind::hamming()).models);
    auto b = realize({{{3, 0}, {1, 1}, {0, 3}}});
    EXPECT_EQ(algorithm1(b, DistanceKind::hamming()).size(), 3u);
    auto c = realize({{{1}}});
    EXPECT_THROW(algorithm1(c, DistanceKind::hamming()), ValidationError);
}

TEST(Algorithm1, CollinearTiesSurvive) {
    auto inst = realize({{{3, 0}, {2, 1}, {1, 2}, {0, 3}}});
    EXPECT_EQ(algorithm1(inst, DistanceKind::hamming()).size(), 4u);
    EXPECT_TRUE(excluded_by_pair({2, 2}, {3, 0}, {0, 3}));
    EXPECT_FALSE(excluded_by_pair({2, 1}, {3, 0}, {1, 2}));
    EXPECT_FALSE(excluded_by_pair({1, 1}, {3, 0}, {0, 3}));
}

TEST(Algorithm1, AgreesWithLpAndCriticalWeights) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto inst = random_instance(1 + seed % 6, 2, seed + 31);
        for (const auto& kind : {DistanceKind::hamming(), DistanceKind::drastic()}) {
            auto lp = merge_scheme(inst, WeightScheme::all_positive(), kind).models;
            EXPECT_EQ(algorithm1(inst, kind), lp) << "seed " << seed;
            auto c = candidates(inst, kind);
            std::vector<Point2> pts;
            for (const auto& v : c.vectors) pts.push_back(to_point(v));
            EXPECT_EQ(merge_scheme(inst, WeightScheme::list(critical_weight_set(pts)), kind).models, lp);
        }
    }
}

TEST(CriticalWeights, Examples) {
    auto ws = critical_weight_set({{3, 0}, {1, 1}, {0, 3}});
    for (const auto& w : {WeightVector{1, 2}, WeightVector{2, 1}, WeightVector{1, 7}, WeightVector{7, 1}})
        EXPECT_NE(std::find(ws.begin(), ws.end(), w), ws.end()) << w.str();
    EXPECT_EQ(critical_weight_set({{4, 4}}).size(), 2u);
    auto two = critical_weight_set({{3, 0}, {0, 3}});
    EXPECT_NE(std::find(two.begin(), two.end(), WeightVector{1, 1}), two.end());
}

TEST(Svg, CountsAndDeterminism) {
    std::vector<Point2> pts{{3, 0}, {2, 2}, {0, 3}};
    std::vector<Point2> sel{{3, 0}, {0, 3}};
    auto doc = svg_document(pts, sel);
    EXPECT_EQ(count(doc, "<circle"), 3u);
    EXPECT_EQ(count(doc, "fill=\"black\""), 2u);
    EXPECT_EQ(count(svg_document(pts, {}), "fill=\"black\""), 0u);
    EXPECT_LT(doc.find("<line"), doc.find("<polyline"));
    EXPECT_LT(doc.find("<polyline"), doc.find("<circle"));

    auto dir = std::filesystem::temp_directory_path();
    auto p1 = (dir / "wmerge_plot_a.svg").string();
    auto p2 = (dir / "wmerge_plot_b.svg").string();
    render_svg(pts, sel, p1);
    render_svg(pts, sel, p2);
    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream s;
        s << f.rdbuf();
        return s.str();
    };
    EXPECT_EQ(slurp(p1), slurp(p2));
    EXPECT_EQ(slurp(p1), doc);
    EXPECT_THROW(render_svg(pts, sel, "/nonexistent-dir/x.svg"), Error);
}
