#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tatecalc/cache.hpp"
#include "tatecalc/io.hpp"
#include "tatecalc/verify.hpp"

namespace {

using namespace tatecalc;

struct CommonOptions {
    std::string ring_name = "mu-rational";
    bool ring_explicit = false;
    std::string ring_file;
    int order = 8;
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOptions& common)
{
    cmd->add_option("--ring", common.ring_name, "coefficient-ring preset")
        ->check(CLI::IsMember({"mu-rational", "n-mod2"}))
        ->each([&common](const std::string&) { common.ring_explicit = true; });
    cmd->add_option("--ring-file", common.ring_file,
                    "JSON ring descriptor (overrides --ring)");
    cmd->add_option("--order", common.order, "truncation order")
        ->check(CLI::Range(0, 24))
        ->capture_default_str();
    cmd->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw schema_error("cannot read '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw schema_error("malformed JSON in '" + path + "': " + e.what());
    }
}

// Ring precedence: --ring-file, then an explicit --ring, then the ring
// named or embedded by the input file, then the mu-rational default.
RingPtr pick_ring(const CommonOptions& common, const json* input_ring_field)
{
    if (!common.ring_file.empty()) {
        return ring_from_json(read_json_file(common.ring_file));
    }
    if (!common.ring_explicit && input_ring_field != nullptr) {
        return resolve_ring(*input_ring_field, common.order);
    }
    return resolve_ring(json(common.ring_name), common.order);
}

void emit(const std::string& text)
{
    std::cout << text << "\n";
}

int run_series(const std::string& name, const CommonOptions& common)
{
    const RingPtr ring = pick_ring(common, nullptr);
    const bool char0 = ring->characteristic() == 0;
    if ((name == "log" || name == "exp" || name == "fgl") && !char0) {
        throw mismatch_error("'" + name + "' requires a characteristic-0 ring");
    }

    if (name == "fgl") {
        const MultiSeries law = group_law(cached_fgl_context(ring, common.order));
        emit(common.format == "json" ? multiseries_to_json(law).dump()
                                     : multiseries_text(law));
        return 0;
    }

    std::optional<LaurentSeries> out;
    if (name == "logprime") {
        out = class_generating_series(ring, "u", common.order).series();
    } else if (name == "pi") {
        const std::string var = char0 ? "c" : "w";
        out = cached_tate_model(ring, var, common.order, false).pi().series();
    } else {
        const int ctx_order = std::max(0, common.order - 1);
        const FGLContext ctx = cached_fgl_context(ring, ctx_order);
        out = (name == "log" ? ctx.log().series() : ctx.exp().series())
                  .truncated(common.order);
    }
    emit(common.format == "json" ? series_to_json(*out).dump() : series_text(*out));
    return 0;
}

int run_boardman(const CommonOptions& common, const std::string& input_file,
                 const std::string& moments_file)
{
    if (input_file.empty() == moments_file.empty()) {
        throw error("exactly one of --input and --moments is required");
    }
    if (!input_file.empty()) {
        const json j = read_json_file(input_file);
        const json* ring_field = j.is_object() && j.contains("ring") ? &j["ring"] : nullptr;
        const RingPtr ring = pick_ring(common, ring_field);
        const LaurentSeries input = series_from_json(j, ring);
        const TateModel model =
            cached_tate_model(ring, input.variable(), common.order, false);
        const PowerSeries result = boardman_transform(model, input);
        const HolomorphyVerdict verdict = is_holomorphic(model, input);
        if (common.format == "json") {
            json out{{"result", series_to_json(result)},
                     {"input_holomorphic", verdict.holomorphic}};
            if (verdict.witness) {
                out["witness"] = *verdict.witness;
            }
            emit(out.dump());
        } else {
            emit(series_text(result));
            emit(verdict.holomorphic
                     ? "input holomorphic"
                     : "input not holomorphic (witness: " +
                           std::to_string(*verdict.witness) + ")");
        }
        return 0;
    }
    const json j = read_json_file(moments_file);
    const json* ring_field = j.is_object() && j.contains("ring") ? &j["ring"] : nullptr;
    const RingPtr ring = pick_ring(common, ring_field);
    const MomentSequence moments = moments_from_json(j, ring);
    const std::string var = ring->characteristic() == 2 ? "w" : "c";
    const TateModel model = cached_tate_model(ring, var, common.order, false);
    const PowerSeries result = reconstruct_from_moments(model, moments);
    emit(common.format == "json" ? json{{"result", series_to_json(result)}}.dump()
                                 : series_text(result));
    return 0;
}

int run_residue(const CommonOptions& common, const std::string& input_file,
                const std::string& mode)
{
    const json j = read_json_file(input_file);
    const json* ring_field = j.is_object() && j.contains("ring") ? &j["ring"] : nullptr;
    const RingPtr ring = pick_ring(common, ring_field);
    const bool char0 = ring->characteristic() == 0;
    if (mode == "residue" && !char0) {
        throw mismatch_error(
            "mode=residue needs the additive coordinate of a characteristic-0 ring");
    }
    const LaurentSeries input = series_from_json(j, ring);
    const bool want_residue = mode == "residue" || (mode.empty() && char0);
    const bool want_functional = mode == "functional" || mode.empty();
    const TateModel model =
        cached_tate_model(ring, input.variable(), common.order, want_residue);

    std::optional<GradedPolynomial> functional;
    std::optional<GradedPolynomial> residue;
    if (want_functional) {
        functional = p_star_del(model, input);
    }
    if (want_residue) {
        residue = residue_functional(model, input);
    }

    bool agree = true;
    if (functional && residue) {
        agree = *functional == *residue;
    }
    if (common.format == "json") {
        json out = json::object();
        if (functional) {
            out["p_star_del"] = poly_to_json(*functional);
        }
        if (residue) {
            out["residue_functional"] = poly_to_json(*residue);
        }
        if (functional && residue) {
            out["agree"] = agree;
        }
        emit(out.dump());
    } else {
        if (functional) {
            emit("p_star_del: " + poly_text(*functional));
        }
        if (residue) {
            emit("residue_functional: " + poly_text(*residue));
        }
        if (functional && residue) {
            emit(std::string("agree: ") + (agree ? "yes" : "no"));
        }
    }
    return agree ? 0 : 1;
}

int run_verify(const std::string& suite, const CommonOptions& common,
               const VerifyOptions& options)
{
    const RingPtr ring = pick_ring(common, nullptr);
    const VerificationReport report = run_suite(suite, ring, options);
    if (common.format == "json") {
        emit(report_to_json(report).dump());
    } else {
        std::cout << report_to_text(report);
    }
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact truncated-series calculus for the Tate sequence of "
                 "cobordism: Boardman transform, boundary functional and "
                 "formal-group-law residues"};
    app.require_subcommand(1);

    CommonOptions series_common;
    std::string series_name;
    CLI::App* series_cmd =
        app.add_subcommand("series", "expand a named series to an order");
    series_cmd
        ->add_option("name", series_name, "one of log|logprime|exp|pi|fgl")
        ->required()
        ->check(CLI::IsMember({"log", "logprime", "exp", "pi", "fgl"}));
    add_common(series_cmd, series_common);

    CommonOptions boardman_common;
    std::string boardman_input;
    std::string boardman_moments;
    CLI::App* boardman_cmd = app.add_subcommand(
        "boardman", "apply the Boardman transform to a series or moment file");
    boardman_cmd->add_option("--input", boardman_input, "series JSON file");
    boardman_cmd->add_option("--moments", boardman_moments, "moment JSON file");
    add_common(boardman_cmd, boardman_common);

    CommonOptions residue_common;
    std::string residue_input;
    std::string residue_mode;
    CLI::App* residue_cmd = app.add_subcommand(
        "residue", "evaluate the boundary functional / additive-coordinate residue");
    residue_cmd->add_option("--input", residue_input, "series JSON file")->required();
    residue_cmd->add_option("--mode", residue_mode, "functional|residue")
        ->check(CLI::IsMember({"functional", "residue"}));
    add_common(residue_cmd, residue_common);

    CommonOptions verify_common;
    std::string verify_suite;
    VerifyOptions verify_options;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run an identity verification suite");
    verify_cmd
        ->add_option("suite", verify_suite,
                     "proposition|lagrange|boardman|exactness|grading|fgl|all")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--trials", verify_options.trials, "randomized trials")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_options.seed, "random seed")
        ->capture_default_str();
    verify_cmd
        ->add_option("--support", verify_options.max_support,
                     "max monomials per random coefficient")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    add_common(verify_cmd, verify_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (series_cmd->parsed()) {
            return run_series(series_name, series_common);
        }
        if (boardman_cmd->parsed()) {
            return run_boardman(boardman_common, boardman_input, boardman_moments);
        }
        if (residue_cmd->parsed()) {
            return run_residue(residue_common, residue_input, residue_mode);
        }
        verify_options.order = verify_common.order;
        return run_verify(verify_suite, verify_common, verify_options);
    } catch (const table_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
