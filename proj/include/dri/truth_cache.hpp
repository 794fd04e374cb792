#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "gravity_model.hpp"
#include "reference_integrator.hpp"
#include "types.hpp"

namespace dri {

/// Environment variable naming the truth cache directory.
inline constexpr const char* kTruthCacheEnv = "DRI_TRUTH_CACHE";

class Fnv1a {
public:
    void add(std::string_view bytes) {
        for (unsigned char ch : bytes) {
            hash_ ^= ch;
            hash_ *= 0x100000001b3ULL;
        }
    }

    void add(double value) {
        const auto bits = std::bit_cast<std::uint64_t>(value);
        for (int k = 0; k < 8; ++k) {
            hash_ ^= (bits >> (8 * k)) & 0xffU;
            hash_ *= 0x100000001b3ULL;
        }
    }

    std::uint64_t value() const noexcept { return hash_; }

    std::string hex() const {
        std::ostringstream os;
        os << std::hex;
        os.width(16);
        os.fill('0');
        os << hash_;
        return os.str();
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

/// Key of one truth trajectory: everything that determines its samples.
inline std::string truth_key(const CartesianState& initial, const GravityModel& model, std::span<const double> grid,
                             const IntegratorConfig& cfg) {
    Fnv1a h;
    h.add("dri-truth-v1");
    for (double v : initial.position) h.add(v);
    for (double v : initial.velocity) h.add(v);
    h.add(model.mu);
    h.add(model.alpha);
    h.add(model.j2);
    h.add(cfg.rel_tol);
    h.add(cfg.abs_tol);
    h.add(cfg.max_step);
    h.add(cfg.stop_at_surface ? 1.0 : 0.0);
    h.add(cfg.extended_precision ? 1.0 : 0.0);
    h.add(static_cast<double>(grid.size()));
    for (double t : grid) h.add(t);
    return h.hex();
}

inline std::string truth_row(double t, const CartesianState& s) {
    std::string row = format_exact(t);
    for (double v : s.position) (row += ' ') += format_exact(v);
    for (double v : s.velocity) (row += ' ') += format_exact(v);
    return row;
}

/// Plain-text table of Cartesian truth samples with a self-describing header.
///
///     # dri-truth v1
///     # key <hex>
///     # model mu <v> alpha <v> j2 <v>
///     # tolerances rel <v> abs <v> max_step <v>
///     # rows <n>
///     # content_hash <hex of the data rows>
///     t x y z vx vy vz
///     <n rows>
inline void write_truth_file(const std::filesystem::path& path, const std::string& key, const GravityModel& model,
                             const IntegratorConfig& cfg, std::span<const double> grid,
                             std::span<const CartesianState> samples) {
    std::string body;
    Fnv1a content;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        std::string row = truth_row(grid[k], samples[k]);
        row += '\n';
        content.add(row);
        body += row;
    }
    std::filesystem::create_directories(path.parent_path());
    std::ostringstream tid;
    tid << std::this_thread::get_id();
    const auto tmp = path.string() + ".tmp" + tid.str();
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError(tmp, "cannot open for writing");
        os << "# dri-truth v1\n"
           << "# key " << key << '\n'
           << "# model mu " << format_exact(model.mu) << " alpha " << format_exact(model.alpha) << " j2 "
           << format_exact(model.j2) << '\n'
           << "# tolerances rel " << format_exact(cfg.rel_tol) << " abs " << format_exact(cfg.abs_tol)
           << " max_step " << format_exact(cfg.max_step) << " stop_at_surface " << cfg.stop_at_surface
           << " extended_precision " << cfg.extended_precision << '\n'
           << "# rows " << samples.size() << '\n'
           << "# content_hash " << content.hex() << '\n'
           << "t x y z vx vy vz\n"
           << body;
        if (!os) throw IoError(tmp, "write failed");
    }
    std::filesystem::rename(tmp, path);
}

/// Reads a truth file; returns nullopt when it is missing, malformed, or
/// does not match `key`/`grid`.
inline std::optional<std::vector<CartesianState>> read_truth_file(const std::filesystem::path& path,
                                                                  const std::string& key,
                                                                  std::span<const double> grid) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::string line, file_key, content_hash;
    std::size_t rows = 0;
    bool have_rows = false;
    while (std::getline(is, line)) {
        if (line.rfind("# ", 0) != 0) break;
        std::istringstream ls(line.substr(2));
        std::string tag;
        ls >> tag;
        if (tag == "key") ls >> file_key;
        else if (tag == "rows") have_rows = static_cast<bool>(ls >> rows);
        else if (tag == "content_hash") ls >> content_hash;
    }
    if (file_key != key || !have_rows || rows != grid.size() || line != "t x y z vx vy vz") return std::nullopt;

    std::vector<CartesianState> out;
    out.reserve(rows);
    Fnv1a content;
    while (out.size() < rows && std::getline(is, line)) {
        content.add(line);
        content.add("\n");
        std::array<double, 7> v{};
        std::size_t pos = 0;
        for (double& field : v) {
            const std::size_t end = std::min(line.find(' ', pos), line.size());
            if (pos >= line.size() || !parse_double(std::string_view(line).substr(pos, end - pos), field))
                return std::nullopt;
            pos = end + 1;
        }
        if (v[0] != grid[out.size()]) return std::nullopt;
        out.push_back({{v[1], v[2], v[3]}, {v[4], v[5], v[6]}});
    }
    if (out.size() != rows || content.hex() != content_hash) return std::nullopt;
    return out;
}

/// Directory-backed cache of reference trajectories.
class TruthCache {
public:
    /// Cache rooted at `dir`; an empty path disables caching.
    explicit TruthCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// Cache rooted at $DRI_TRUTH_CACHE, else <tmp>/dri-truth-cache.
    static TruthCache from_environment() {
        if (const char* env = std::getenv(kTruthCacheEnv); env != nullptr && *env != '\0')
            return TruthCache(env);
        return TruthCache(std::filesystem::temp_directory_path() / "dri-truth-cache");
    }

    static TruthCache disabled() { return TruthCache(std::filesystem::path{}); }

    bool enabled() const noexcept { return !dir_.empty(); }
    const std::filesystem::path& directory() const noexcept { return dir_; }

    std::filesystem::path path_for(const std::string& key) const { return dir_ / ("truth-" + key + ".txt"); }

    /// Cached samples on `grid`, integrating (and storing) on a miss.
    std::vector<CartesianState> get(const CartesianState& initial, const GravityModel& model,
                                    std::span<const double> grid, const IntegratorConfig& cfg,
                                    bool* hit = nullptr) const {
        const std::string key = truth_key(initial, model, grid, cfg);
        if (enabled()) {
            if (auto cached = read_truth_file(path_for(key), key, grid)) {
                if (hit) *hit = true;
                return std::move(*cached);
            }
        }
        if (hit) *hit = false;
        auto samples = integrate(initial, model, grid, cfg);
        if (enabled()) write_truth_file(path_for(key), key, model, cfg, grid, samples);
        return samples;
    }

private:
    std::filesystem::path dir_;
};

}  // namespace dri
