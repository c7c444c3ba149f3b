#include <chrono>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wolff/errors.hpp"
#include "wolff/independence.hpp"
#include "wolff/io.hpp"
#include "wolff/measure.hpp"
#include "wolff/packing.hpp"
#include "wolff/render.hpp"
#include "wolff/verify.hpp"

namespace {

// Exit codes: 0 success, 1 mathematical check failed, 2 usage or bad input,
// 3 runtime limitation (region exhausted, thin residual, solver scale).
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kLimitation = 3;

int cmd_pack(std::size_t discs, double residual, double shrink, double tol,
             const std::string& out_path, const std::string& series_path) {
    wolff::StopRule stop;
    if (discs > 0 && residual > 0.0) {
        std::cerr << "pack: choose exactly one of --discs and --residual\n";
        return kUsage;
    }
    if (discs > 0) {
        stop = wolff::StopRule::after_discs(discs);
    } else if (residual > 0.0) {
        stop = wolff::StopRule::at_residual(residual);
    } else {
        std::cerr << "pack: one of --discs or --residual is required\n";
        return kUsage;
    }

    auto t0 = std::chrono::steady_clock::now();
    wolff::Packing packing = wolff::pack_greedy(stop, shrink, tol);
    auto t1 = std::chrono::steady_clock::now();
    double seconds = std::chrono::duration<double>(t1 - t0).count();

    wolff::write_file(out_path, wolff::packing_to_json(packing));

    if (!series_path.empty()) {
        // Same compensated accumulation as the packing ledger, so entry n
        // equals prefix(n).residual_area() bit for bit.
        std::vector<wolff::SeriesPoint> series;
        wolff::CompensatedSum covered;
        for (std::size_t n = 0; n < packing.size(); ++n) {
            const wolff::Disc& d = packing.discs()[n];
            covered.add(std::numbers::pi * d.radius * d.radius);
            series.push_back({static_cast<double>(n + 1),
                              std::numbers::pi - covered.value()});
        }
        wolff::write_file(series_path, wolff::series_to_csv(series));
    }

    std::printf("discs=%zu residual=%.17g wall_time=%.3fs\n", packing.size(),
                packing.residual_area(), seconds);
    return kOk;
}

int cmd_measure(const std::string& in_path, const std::string& out_path) {
    wolff::Packing packing = wolff::packing_from_json(wolff::read_file(in_path));
    wolff::AnnihilatingMeasure m = wolff::wolff_measure(packing);
    wolff::write_file(out_path, wolff::measure_to_json(m));
    std::printf("atoms=%zu residual=%.17g total_variation=%.17g\n", m.atoms.size(),
                m.residual_area, wolff::total_variation(m));
    return kOk;
}

int cmd_verify(const std::string& in_path, const wolff::VerifyConfig& config,
               const std::string& out_path, const std::string& csv_path) {
    // The ledger identity is verified below as the exact k = 0 anchor, so the
    // loader only enforces structure here; a corrupted ledger must surface as
    // a failed check, not as unreadable input.
    wolff::AnnihilatingMeasure measure = wolff::measure_from_json(
        wolff::read_file(in_path), wolff::MeasureValidation::structural);

    std::vector<wolff::VerificationReport> reports =
        wolff::run_verification(measure, config);

    if (!out_path.empty()) {
        wolff::write_file(out_path, wolff::reports_to_json(reports));
    }
    if (!csv_path.empty()) {
        wolff::write_file(csv_path, wolff::reports_to_csv(reports));
    }

    int failed = 0;
    for (const auto& r : reports) {
        if (!r.pass) {
            ++failed;
            std::printf("FAIL %s %s deviation=%.17g bound=%.17g\n",
                        wolff::to_string(r.kind).c_str(), r.descriptor.c_str(),
                        r.deviation, r.bound);
        }
    }
    std::printf("checks=%zu failed=%d\n", reports.size(), failed);
    return failed == 0 ? kOk : kCheckFailed;
}

int cmd_independence(const std::string& points_path, const std::string& measure_path,
                     std::size_t prefix, int kmax, int contrast,
                     const std::string& packing_path, const std::string& out_path) {
    if (contrast > 0) {
        if (packing_path.empty()) {
            std::cerr << "independence: --contrast requires --packing\n";
            return kUsage;
        }
        wolff::Packing packing =
            wolff::packing_from_json(wolff::read_file(packing_path));
        wolff::ContrastReport report =
            wolff::contrast_experiment(contrast, packing, kmax);
        if (!out_path.empty()) {
            wolff::write_file(out_path, wolff::contrast_to_json(report));
        }
        std::printf("segment=%.17g wolff_prefix=%.17g ratio=%.17g\n",
                    report.segment.optimal_value, report.wolff_prefix.optimal_value,
                    report.ratio);
        return kOk;
    }

    wolff::IndependenceProblem problem;
    problem.degree_cap = kmax;
    if (!points_path.empty()) {
        problem.points = wolff::points_from_csv(wolff::read_file(points_path));
    } else if (!measure_path.empty()) {
        wolff::AnnihilatingMeasure m =
            wolff::measure_from_json(wolff::read_file(measure_path));
        std::size_t count = prefix > 0 ? std::min(prefix, m.atoms.size()) : m.atoms.size();
        for (std::size_t i = 0; i < count; ++i) problem.points.push_back(m.atoms[i].point);
    } else {
        std::cerr << "independence: need --points, --measure, or --contrast\n";
        return kUsage;
    }

    wolff::IndependenceCertificate cert = wolff::min_l1_annihilator(problem);
    if (!out_path.empty()) {
        wolff::write_file(out_path, wolff::certificate_to_json(cert));
    }
    std::printf("points=%zu kmax=%d optimal=%.17g bracket=[%.17g, %.17g]\n",
                cert.problem.points.size(), cert.problem.degree_cap,
                cert.optimal_value, cert.lower_bracket, cert.upper_bracket);
    return kOk;
}

int cmd_render(const std::string& in_path, const std::string& series_path,
               const wolff::RenderSpec& spec, const std::string& out_path) {
    if (!in_path.empty()) {
        wolff::Packing packing = wolff::packing_from_json(wolff::read_file(in_path));
        wolff::write_file(out_path, wolff::render_packing(packing, spec));
    } else if (!series_path.empty()) {
        auto series = wolff::series_from_csv(wolff::read_file(series_path));
        wolff::write_file(out_path, wolff::render_convergence(series, spec));
    } else {
        std::cerr << "render: need --in (packing) or --series (csv)\n";
        return kUsage;
    }
    std::printf("wrote %s\n", out_path.c_str());
    return kOk;
}

int cmd_export(const std::string& in_path, const std::string& out_path) {
    wolff::AnnihilatingMeasure m = wolff::measure_from_json(wolff::read_file(in_path));
    wolff::write_file(out_path, wolff::measure_to_csv(m));
    std::printf("wrote %s\n", out_path.c_str());
    return kOk;
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const wolff::RegionExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLimitation;
    } catch (const wolff::InfeasibleScale& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLimitation;
    } catch (const wolff::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const wolff::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const wolff::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const wolff::InvariantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const wolff::DegenerateInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLimitation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Greedy disc packings of the unit disc, the induced atomic annihilating "
        "measure for the disc algebra, truncation-bound verification, and "
        "min-max moment certificates"};
    app.require_subcommand(1);

    // pack
    auto* pack = app.add_subcommand("pack", "build a greedy packing");
    std::size_t pack_discs = 0;
    double pack_residual = 0.0;
    double pack_shrink = 0.99;
    double pack_tol = 1e-6;
    std::string pack_out, pack_series;
    pack->add_option("--discs", pack_discs, "stop after this many discs");
    pack->add_option("--residual", pack_residual, "stop at this residual area");
    pack->add_option("--shrink", pack_shrink, "shrink factor in (0,1)")
        ->capture_default_str();
    pack->add_option("--tol", pack_tol, "search tolerance")->capture_default_str();
    pack->add_option("--out", pack_out, "output packing JSON")->required();
    pack->add_option("--series", pack_series, "also write the residual series CSV");

    // measure
    auto* measure = app.add_subcommand("measure", "packing -> annihilating measure");
    std::string measure_in, measure_out;
    measure->add_option("--in", measure_in, "packing JSON")->required();
    measure->add_option("--out", measure_out, "output measure JSON")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run the truncation-bound suite");
    std::string verify_in, verify_out, verify_csv;
    wolff::VerifyConfig vcfg;
    std::uint64_t verify_seed = 0;
    verify->add_option("--in", verify_in, "measure JSON")->required();
    verify->add_option("--kmax", vcfg.moment_kmax, "max moment degree")
        ->capture_default_str();
    verify->add_option("--exp-grid", vcfg.exp_radius, "radius of the 9-point exp grid")
        ->capture_default_str();
    verify->add_option("--cauchy", vcfg.cauchy_moduli,
                       "moduli for the Cauchy-kernel checks")
        ->delimiter(',')
        ->capture_default_str();
    verify->add_option("--harmonic-kmax", vcfg.harmonic_kmax,
                       "max degree of the harmonic basis")
        ->capture_default_str();
    verify->add_option("--trials", vcfg.poly_trials, "random polynomial trials")
        ->capture_default_str();
    verify->add_option("--degree", vcfg.poly_degree, "random polynomial degree")
        ->capture_default_str();
    verify->add_option("--mc-samples", vcfg.mc_samples,
                       "Monte-Carlo oracle samples (0 disables)")
        ->capture_default_str();
    verify->add_option("--blaschke-zeros", vcfg.blaschke_zero_count,
                       "seeded Blaschke zeros for the dominating diagnostic")
        ->capture_default_str();
    verify->add_option("--seed", verify_seed, "seed for all stochastic checks")
        ->required();
    verify->add_option("--out", verify_out, "report JSON path");
    verify->add_option("--csv", verify_csv, "report CSV path");

    // independence
    auto* indep = app.add_subcommand("independence", "min-max moment certificates");
    std::string indep_points, indep_measure, indep_packing, indep_out;
    std::size_t indep_prefix = 0;
    int indep_kmax = 12;
    int indep_contrast = 0;
    indep->add_option("--points", indep_points, "points CSV (re,im per line)");
    indep->add_option("--measure", indep_measure, "take points from a measure JSON");
    indep->add_option("--prefix", indep_prefix, "use only the first N atoms");
    indep->add_option("--kmax", indep_kmax, "moment degree cap")->capture_default_str();
    indep->add_option("--contrast", indep_contrast,
                      "segment-vs-prefix contrast at this size");
    indep->add_option("--packing", indep_packing, "packing JSON for --contrast");
    indep->add_option("--out", indep_out, "certificate JSON path");

    // render
    auto* render = app.add_subcommand("render", "emit SVG figures");
    std::string render_in, render_series, render_out;
    wolff::RenderSpec rspec;
    render->add_option("--in", render_in, "packing JSON");
    render->add_option("--series", render_series, "series CSV for a log-log plot");
    render->add_option("--out", render_out, "output SVG")->required();
    render->add_option("--size", rspec.size_px, "canvas size in pixels")
        ->capture_default_str();
    render->add_flag("--color-by-index", rspec.color_by_index,
                     "gradient by insertion order");
    render->add_flag("--annotate", rspec.annotate_residual,
                     "overlay the residual-area annotation");

    // export
    auto* exp = app.add_subcommand("export", "measure JSON -> CSV");
    std::string export_in, export_out;
    exp->add_option("--in", export_in, "measure JSON")->required();
    exp->add_option("--out", export_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (pack->parsed()) {
        return guarded([&] {
            return cmd_pack(pack_discs, pack_residual, pack_shrink, pack_tol,
                            pack_out, pack_series);
        });
    }
    if (measure->parsed()) {
        return guarded([&] { return cmd_measure(measure_in, measure_out); });
    }
    if (verify->parsed()) {
        vcfg.seed = verify_seed;
        return guarded([&] { return cmd_verify(verify_in, vcfg, verify_out, verify_csv); });
    }
    if (indep->parsed()) {
        return guarded([&] {
            return cmd_independence(indep_points, indep_measure, indep_prefix,
                                    indep_kmax, indep_contrast, indep_packing,
                                    indep_out);
        });
    }
    if (render->parsed()) {
        return guarded([&] { return cmd_render(render_in, render_series, rspec, render_out); });
    }
    if (exp->parsed()) {
        return guarded([&] { return cmd_export(export_in, export_out); });
    }
    return kUsage;
}
