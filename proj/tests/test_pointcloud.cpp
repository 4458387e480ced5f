#include "doctest.h"
#include "helpers.hpp"

#include "cyclecent/error.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace cyclecent;

TEST_SUITE("pointcloud") {

TEST_CASE("parse points infers arity") {
    auto a = parse_points("0,0\n1,0");
    CHECK(a.size() == 2);
    CHECK(a.dimension() == 2);
    auto b = parse_points("1,2,3");
    CHECK(b.size() == 1);
    CHECK(b.dimension() == 3);
    CHECK(b.point(0)[2] == 3.0);
}

TEST_CASE("ragged, malformed and empty input") {
    CHECK_THROWS_AS(parse_points("1,2\n3"), FormatError);
    CHECK_THROWS_AS(parse_points("1,x"), FormatError);
    CHECK_THROWS_AS(parse_points(""), EmptyInputError);
    CHECK_THROWS_AS(parse_points("\n\n"), EmptyInputError);
    CHECK_THROWS_AS(load_points("/nonexistent/file.csv"), ArgumentError);
}

TEST_CASE("comment lines and CRLF are tolerated") {
    auto a = parse_points("# header\r\n1,2\r\n3,4\r\n");
    CHECK(a.size() == 2);
    CHECK(a.point(1)[0] == 3.0);
}

TEST_CASE("save and load round trip") {
    auto path = std::filesystem::temp_directory_path() / "cyclecent_points_roundtrip.csv";
    PointCloud c(2, {0.1, 1.0 / 3.0, -2.5e-7, 1e10});
    save_points(c, path);
    CHECK(load_points(path) == c);
    std::filesystem::remove(path);
}

TEST_CASE("pairwise distances") {
    auto d = pairwise_distances(PointCloud(2, {0, 0, 3, 4}));
    CHECK(d(0, 1) == 5.0);
    CHECK(d(1, 0) == 5.0);
    auto single = pairwise_distances(PointCloud(2, {1, 1}));
    CHECK(single.size() == 1);
    CHECK(single(0, 0) == 0.0);
    auto tri = pairwise_distances(PointCloud(2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2}));
    CHECK(tri(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tri(0, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tri(1, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(pairwise_distances(PointCloud()), EmptyInputError);
}

TEST_CASE("distance matrix validation") {
    CHECK_THROWS_AS(DistanceMatrix(2, {0, 1, 2, 0}), ArgumentError);
    CHECK_THROWS_AS(DistanceMatrix(2, {0, -1, -1, 0}), ArgumentError);
    CHECK_THROWS_AS(DistanceMatrix(2, {1, 1, 1, 0}), ArgumentError);
    CHECK_NOTHROW(DistanceMatrix(2, {0, 1, 1, 0}));
}

TEST_CASE("triangle inequality on random clouds") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto d = pairwise_distances(testing::random_cloud(s, 12, 3));
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = 0; j < d.size(); ++j)
                for (std::size_t k = 0; k < d.size(); ++k) CHECK(d(i, k) <= d(i, j) + d(j, k) + 1e-12);
    }
}

TEST_CASE("perturb") {
    auto c = testing::random_cloud(1, 50);
    CHECK(perturb(c, 0.0, 9) == c);
    CHECK_THROWS_AS(perturb(c, -0.1, 9), ArgumentError);
    auto p = perturb(c, 0.05, 9);
    CHECK(p == perturb(c, 0.05, 9));
    CHECK_FALSE(p == perturb(c, 0.05, 10));
    REQUIRE(p.size() == c.size());
    for (std::size_t i = 0; i < c.coords().size(); ++i) CHECK(std::abs(p.coords()[i] - c.coords()[i]) <= 0.05);
    // A smaller kappa never moves a coordinate further than the larger one allows.
    auto q = perturb(c, 0.01, 3);
    for (std::size_t i = 0; i < c.coords().size(); ++i) CHECK(std::abs(q.coords()[i] - c.coords()[i]) <= 0.05);
}

TEST_CASE("sierpinski sampler") {
    CHECK(sample_sierpinski(0, 1).empty());
    auto s = sample_sierpinski(2000, 4);
    CHECK(s.size() == 2000);
    CHECK(s == sample_sierpinski(2000, 4));
    const double h = std::sqrt(3.0) / 2;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = s.point(i)[0], y = s.point(i)[1];
        // Barycentric test against (0,0), (1,0), (1/2, h).
        CHECK(y >= -1e-12);
        CHECK(y <= 2 * h * x + 1e-12);
        CHECK(y <= 2 * h * (1 - x) + 1e-12);
    }
}

TEST_CASE("fern sampler stays inside its envelope") {
    CHECK(sample_fern(0, 1).empty());
    auto f = sample_fern(20000, 2);
    CHECK(f == sample_fern(20000, 2));
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f.point(i)[0] >= -3.0);
        CHECK(f.point(i)[0] <= 3.0);
        CHECK(f.point(i)[1] >= 0.0);
        CHECK(f.point(i)[1] <= 10.1);
    }
}

TEST_CASE("bootstrap sample") {
    auto c = testing::random_cloud(5, 1000);
    auto b = bootstrap_sample(c, 0.8, 1);
    CHECK(b.size() == 800);
    CHECK(bootstrap_sample(c, 1.0, 1).size() == 1000);
    CHECK(b == bootstrap_sample(c, 0.8, 1));
    CHECK_FALSE(b == bootstrap_sample(c, 0.8, 1, 1));
    CHECK_THROWS_AS(bootstrap_sample(c, 0.0, 1), ArgumentError);
    CHECK_THROWS_AS(bootstrap_sample(c, 1.5, 1), ArgumentError);
    for (std::size_t i = 0; i < b.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < c.size() && !found; ++j)
            found = b.point(i)[0] == c.point(j)[0] && b.point(i)[1] == c.point(j)[1];
        CHECK(found);
    }
}

TEST_CASE("two annuli sampler") {
    auto a = sample_two_annuli(60, 3);
    CHECK(a.size() == 60);
    CHECK(a == sample_two_annuli(60, 3));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double cx = i % 2 == 0 ? -1.0 : 1.0;
        const double r = std::hypot(a.point(i)[0] - cx, a.point(i)[1]);
        CHECK(r >= 0.9 - 1e-12);
        CHECK(r <= 1.1 + 1e-12);
    }
}

}
