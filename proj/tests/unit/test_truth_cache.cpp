#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dri/propagator.hpp"
#include "dri/truth_cache.hpp"

using namespace dri;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

CartesianState leo() {
    return polar_nodal_to_cartesian(
        classical_to_polar_nodal({7000.0, 0.005, 55.0 * kDeg, 0.2, 0.0, 0.3}, GravityModel{}));
}

}  // namespace

TEST(TruthCache, StoresAndReloadsBitExact) {
    const TruthCache cache(fresh_dir("dri_cache_roundtrip"));
    const GravityModel m;
    const auto grid = uniform_grid(3600.0, 60.0);
    bool hit = true;
    const auto a = cache.get(leo(), m, grid, {}, &hit);
    EXPECT_FALSE(hit);
    const auto b = cache.get(leo(), m, grid, {}, &hit);
    EXPECT_TRUE(hit);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].position, b[k].position);
        EXPECT_EQ(a[k].velocity, b[k].velocity);
    }
}

TEST(TruthCache, KeyDependsOnEveryInput) {
    const GravityModel m;
    const auto grid = uniform_grid(600.0, 60.0);
    const IntegratorConfig cfg;
    const std::string k0 = truth_key(leo(), m, grid, cfg);
    EXPECT_EQ(k0, truth_key(leo(), m, grid, cfg));
    auto x = leo();
    x.position[0] += 1e-9;
    EXPECT_NE(k0, truth_key(x, m, grid, cfg));
    EXPECT_NE(k0, truth_key(leo(), m.scaled_j2(0.5), grid, cfg));
    auto tight = cfg;
    tight.rel_tol = 1e-13;
    EXPECT_NE(k0, truth_key(leo(), m, grid, tight));
    auto through = cfg;
    through.stop_at_surface = false;
    EXPECT_NE(k0, truth_key(leo(), m, grid, through));
    EXPECT_NE(k0, truth_key(leo(), m, uniform_grid(600.0, 30.0), cfg));
}

TEST(TruthCache, CorruptedFileIsRecomputed) {
    const auto dir = fresh_dir("dri_cache_corrupt");
    const TruthCache cache(dir);
    const GravityModel m;
    const auto grid = uniform_grid(1200.0, 60.0);
    const auto good = cache.get(leo(), m, grid, {});
    const auto path = cache.path_for(truth_key(leo(), m, grid, {}));
    ASSERT_TRUE(std::filesystem::exists(path));

    std::stringstream buf;
    buf << std::ifstream(path).rdbuf();
    std::string text = buf.str();
    const auto pos = text.rfind('7');
    ASSERT_NE(pos, std::string::npos);
    text[pos] = '8';
    std::ofstream(path, std::ios::trunc) << text;
    EXPECT_FALSE(read_truth_file(path, truth_key(leo(), m, grid, {}), grid).has_value());

    bool hit = true;
    const auto again = cache.get(leo(), m, grid, {}, &hit);
    EXPECT_FALSE(hit);
    EXPECT_EQ(again.back().position, good.back().position);
    EXPECT_TRUE(read_truth_file(path, truth_key(leo(), m, grid, {}), grid).has_value());
}

TEST(TruthCache, DisabledCacheWritesNothing) {
    const auto cache = TruthCache::disabled();
    EXPECT_FALSE(cache.enabled());
    bool hit = true;
    const auto out = cache.get(leo(), GravityModel{}, uniform_grid(120.0, 60.0), {}, &hit);
    EXPECT_FALSE(hit);
    EXPECT_EQ(out.size(), 3u);
}

TEST(TruthCache, EnvironmentSelectsDirectory) {
    const auto dir = fresh_dir("dri_cache_env");
    ::setenv(kTruthCacheEnv, dir.c_str(), 1);
    EXPECT_EQ(TruthCache::from_environment().directory(), dir);
    ::unsetenv(kTruthCacheEnv);
    EXPECT_EQ(TruthCache::from_environment().directory(), std::filesystem::temp_directory_path() / "dri-truth-cache");
}
