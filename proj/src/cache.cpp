#include "tatecalc/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "tatecalc/io.hpp"

namespace tatecalc {

namespace {

std::optional<std::filesystem::path> cache_dir()
{
    const char* dir = std::getenv("TATECALC_CACHE");
    if (dir == nullptr || *dir == '\0') {
        return std::nullopt;
    }
    return std::filesystem::path(dir);
}

std::optional<LaurentSeries> load_series(const std::filesystem::path& file,
                                         const RingPtr& ring)
{
    try {
        std::ifstream in(file);
        if (!in) {
            return std::nullopt;
        }
        json j = json::parse(in);
        return series_from_json(j, ring);
    } catch (...) {
        return std::nullopt;
    }
}

void store_series(const std::filesystem::path& file, const LaurentSeries& s)
{
    try {
        std::filesystem::create_directories(file.parent_path());
        std::ofstream out(file, std::ios::trunc);
        out << series_to_json(s).dump() << "\n";
    } catch (...) {
        // best effort only
    }
}

std::optional<std::filesystem::path> cache_file(const RingPtr& ring,
                                                const std::string& kind,
                                                int order)
{
    const auto dir = cache_dir();
    if (!dir || !ring->is_preset()) {
        return std::nullopt;
    }
    return *dir / (ring->name() + "-o" + std::to_string(order) + "-" + kind +
                   ".json");
}

} // namespace

FGLContext cached_fgl_context(const RingPtr& ring, int order)
{
    const auto file = cache_file(ring, "exp", order);
    if (file) {
        if (auto cached = load_series(*file, ring)) {
            try {
                return FGLContext(ring, order, PowerSeries(std::move(*cached)));
            } catch (...) {
                // stale or corrupt; fall through to a clean rebuild
            }
        }
    }
    FGLContext ctx(ring, order);
    if (file) {
        store_series(*file, ctx.exp());
    }
    return ctx;
}

TateModel cached_tate_model(const RingPtr& ring, const std::string& variable,
                            int order, bool with_fgl)
{
    const auto file = cache_file(ring, "pinv-" + variable, order);
    std::optional<TateModel> model;
    if (file) {
        if (auto cached = load_series(*file, ring)) {
            try {
                model.emplace(ring, variable, order, PowerSeries(std::move(*cached)));
            } catch (...) {
            }
        }
    }
    if (!model) {
        model.emplace(ring, variable, order);
        if (file) {
            store_series(*file, model->pi_inverse());
        }
    }
    if (with_fgl) {
        model->attach_fgl(cached_fgl_context(ring, order));
    }
    return *model;
}

} // namespace tatecalc
