// loewner_cli: criteria, chains, extensions and plots from spec files.
//
// Exit status: 0 success, 1 failed criterion or falsification, 2 bad input.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "loewner/loewner.hpp"
#include "loewner/plot.hpp"
#include "loewner/specfile.hpp"

namespace fs = std::filesystem;
using namespace loewner;

namespace {

struct Common {
    std::string spec_path;
    std::string kind, fn, g, alpha, beta, c, coeffs, h_coeffs, chain, r_max, angles, times;
    std::string out_dir;
    bool emit_plots = false;
    std::uint64_t seed = 0;
};

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw input_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw input_error("cannot write " + p.string());
    out << text;
}

RunSpec load(const Common& o)
{
    SpecMap m;
    if (!o.spec_path.empty())
        m = parse_spec_text(read_file(o.spec_path));
    const std::pair<const char*, const std::string*> flags[] = {
        {"kind", &o.kind},     {"f", &o.fn},           {"g", &o.g},         {"alpha", &o.alpha},
        {"beta", &o.beta},     {"c", &o.c},            {"coeffs", &o.coeffs}, {"h_coeffs", &o.h_coeffs},
        {"chain", &o.chain},   {"r_max", &o.r_max},    {"angles", &o.angles}, {"times", &o.times}};
    for (const auto& [key, value] : flags)
        if (!value->empty())
            m[key] = *value;
    if (m.contains("fn")) {
        m.try_emplace("f", m["fn"]);
        m.erase("fn");
    }
    return run_spec_from_map(m);
}

std::optional<fs::path> out_dir(const Common& o)
{
    if (o.out_dir.empty()) {
        if (o.emit_plots)
            throw input_error("--emit-plots needs --out");
        return std::nullopt;
    }
    fs::create_directories(o.out_dir);
    return fs::path(o.out_dir);
}

void finish(const std::string& report, const std::optional<fs::path>& dir)
{
    std::cout << report;
    if (dir)
        write_file(*dir / "report.txt", report);
}

void emit_curves(const LoewnerChain& ch, const fs::path& dir)
{
    const auto cs = image_curves(ch, 0.9, {0.0, 0.5, 1.0});
    write_file(dir / "curves.svg", curves_svg(cs));
    write_file(dir / "curves.csv", curves_csv(cs));
}

int fail(const std::string& stage, const std::string& witness)
{
    std::cerr << "FAIL stage=" << stage << " witness=" << witness << "\n";
    return 1;
}

int run_check(const Common& o)
{
    const RunSpec rs = load(o);
    if (!rs.criterion)
        throw parse_error("check needs kind");
    const auto dir = out_dir(o);
    const CriterionKind kind = *rs.criterion;
    const CriterionParams params{real_alpha(rs), rs.beta};
    const auto crit = evaluate_criterion(kind, params, criterion_inputs(kind, rs), rs.grid);

    std::string report = crit.to_document().str();
    std::vector<std::pair<std::string, std::string>> failures;
    if (!crit.passed)
        failures.emplace_back("criterion", "z=" + format_complex(crit.worst_point));

    const auto chain = chain_for_criterion(kind, rs);

    ScanOptions scan;
    scan.injectivity.seed = o.seed;
    const double r = rs.grid.r_max();
    const Holomorphic subject = chain ? detail::chain_slice(*chain, 0.0) : as_holomorphic(subject_f(rs));
    const auto verdict = univalence_scan(subject, r, scan);
    report += verdict.to_document().str();
    if (verdict.falsified) {
        std::string w = verdict.witness ? format_complex(verdict.witness->z1) + "," + format_complex(verdict.witness->z2)
                                        : "target=" + format_complex(verdict.winding->target);
        failures.emplace_back("oracle", w);
    }

    if (chain) {
        VerifyOptions vo;
        vo.times = rs.times;
        const auto cr = verify_chain(*chain, rs.grid, vo);
        report += cr.to_document().str();
        if (!cr.passed()) {
            std::string w = cr.subordination_violations.empty()
                                ? "z=" + format_complex(cr.herglotz_witness_z) + " t=" + format_double(cr.herglotz_witness_t)
                                : "target=" + format_complex(cr.subordination_violations.front().target);
            failures.emplace_back("chain", w);
        }

        DilatationOptions dopt;
        dopt.angles = rs.grid.angles_per_circle;
        dopt.rho = r;
        const auto dr = dilatation_report(*chain, dopt);
        report += dr.to_document().str();
        KeyValueDocument bt;
        bt.section("bound-transfer");
        bt.add("criterion_min_dilatation", crit.min_dilatation);
        bt.add("extension_sup_modulus", dr.sup_modulus);
        bt.add("holds", dr.sup_modulus <= crit.min_dilatation + 1e-9);
        report += bt.str();
        if (!(dr.sup_modulus < 1.0) && dr.worst)
            failures.emplace_back("extension", "r=" + format_double(dr.worst->r) + " theta=" + format_double(dr.worst->theta));
        if (dir)
            write_file(*dir / "samples.csv", samples_csv(dr));
        if (dir && o.emit_plots) {
            std::vector<HeatSample> hs;
            for (const auto& s : dr.samples)
                hs.push_back({s.r, s.theta, s.modulus});
            write_file(*dir / "mu.svg", heatmap_svg(hs));
            emit_curves(*chain, *dir);
        }
    }

    KeyValueDocument summary;
    summary.section("summary");
    summary.add("status", failures.empty() ? "pass" : "fail");
    for (std::size_t i = 0; i < failures.size(); ++i)
        summary.add("failure." + std::to_string(i), failures[i].first + ": " + failures[i].second);
    report += summary.str();
    finish(report, dir);
    return failures.empty() ? 0 : fail(failures.front().first, failures.front().second);
}

int run_chain(const Common& o)
{
    const RunSpec rs = load(o);
    const auto dir = out_dir(o);
    const auto ch = chain_from_spec(rs);
    VerifyOptions vo;
    vo.times = rs.times;
    const auto cr = verify_chain(ch, rs.grid, vo);
    finish(cr.to_document().str(), dir);
    if (dir && o.emit_plots)
        emit_curves(ch, *dir);
    if (cr.passed())
        return 0;
    if (!cr.subordination_violations.empty())
        return fail("chain", "target=" + format_complex(cr.subordination_violations.front().target));
    return fail("chain", "z=" + format_complex(cr.herglotz_witness_z) + " t=" + format_double(cr.herglotz_witness_t));
}

int run_extend(const Common& o, const std::string& radii, std::size_t angles, double rho)
{
    const RunSpec rs = load(o);
    const auto dir = out_dir(o);
    const auto ch = chain_from_spec(rs);
    DilatationOptions dopt;
    if (!radii.empty())
        dopt.radii = parse_real_list(radii);
    dopt.angles = angles;
    dopt.rho = rho;
    const auto dr = dilatation_report(ch, dopt);
    finish(dr.to_document().str(), dir);
    if (dir) {
        write_file(*dir / "samples.csv", samples_csv(dr));
        if (o.emit_plots) {
            std::vector<HeatSample> hs;
            for (const auto& s : dr.samples)
                hs.push_back({s.r, s.theta, s.modulus});
            write_file(*dir / "mu.svg", heatmap_svg(hs));
            emit_curves(ch, *dir);
        }
    }
    if (!(dr.sup_modulus < 1.0) && dr.worst)
        return fail("extension", "r=" + format_double(dr.worst->r) + " theta=" + format_double(dr.worst->theta));
    return 0;
}

int run_plot(const Common& o, const std::string& in_dir)
{
    const fs::path src = fs::path(in_dir) / "samples.csv";
    if (!fs::exists(src))
        throw input_error("missing artifact " + src.string());
    const fs::path dst = o.out_dir.empty() ? fs::path(in_dir) : fs::path(o.out_dir);
    fs::create_directories(dst);
    write_file(dst / "mu.svg", heatmap_svg(parse_samples_csv(read_file(src))));
    const RunSpec rs = load(o);
    if (rs.chain)
        emit_curves(chain_from_spec(rs), dst);
    return 0;
}

int run_normalize(const Common& o, const std::string& times)
{
    const RunSpec rs = load(o);
    const auto dir = out_dir(o);
    const auto ch = chain_from_spec(rs);
    const auto ts = times.empty() ? std::vector<double>{0.0, 0.5, 1.0, 2.0} : parse_real_list(times);
    KeyValueDocument doc;
    doc.section("normalize");
    doc.add("chain", ch.describe());
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto n = normalize_chain(ch, ts[i]);
        const cplx d = n.h_prime(0.0);
        const double err = std::abs(d - std::exp(ts[i]));
        worst = std::max(worst, err / std::exp(ts[i]));
        const std::string p = "t." + std::to_string(i) + ".";
        doc.add(p + "t", ts[i]);
        doc.add(p + "lambda", n.lambda);
        doc.add(p + "s", n.s);
        doc.add(p + "h0", n.h(0.0));
        doc.add(p + "h_prime0", d);
    }
    doc.add("max_relative_error", worst);
    finish(doc.str(), dir);
    return 0;
}

void add_common(CLI::App* sub, Common& o)
{
    sub->add_option("spec", o.spec_path, "spec file (key = value)");
    sub->add_option("--kind", o.kind, "criterion kind");
    sub->add_option("--fn,-f", o.fn, "function, e.g. koebe or spiral-koebe:0.5");
    sub->add_option("--g", o.g, "g for bazilevic kinds");
    sub->add_option("--alpha", o.alpha);
    sub->add_option("--beta", o.beta);
    sub->add_option("--c", o.c, "exponential chain constant");
    sub->add_option("--coeffs", o.coeffs, "comma-separated coefficients");
    sub->add_option("--h-coeffs", o.h_coeffs, "comma-separated coefficients of h");
    sub->add_option("--chain", o.chain);
    sub->add_option("--r-max", o.r_max);
    sub->add_option("--angles", o.angles, "angles per grid circle");
    sub->add_option("--times", o.times, "comma-separated chain times");
    sub->add_option("--out,-o", o.out_dir, "output directory");
    sub->add_flag("--emit-plots", o.emit_plots);
    sub->add_option("--seed", o.seed, "low-discrepancy sequence offset");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Loewner chains, criteria and quasiconformal extensions"};
    app.require_subcommand(1);
    Common o;

    auto* check = app.add_subcommand("check", "evaluate a criterion and its chain");
    auto* chain = app.add_subcommand("chain", "verify a chain");
    auto* extend = app.add_subcommand("extend", "dilatation of the extension");
    auto* plot = app.add_subcommand("plot", "render SVG from a previous run");
    auto* normalize = app.add_subcommand("normalize", "standard reparametrization");
    for (auto* s : {check, chain, extend, plot, normalize})
        add_common(s, o);

    std::string radii, norm_times, in_dir;
    std::size_t ext_angles = 720;
    double rho = 1.0;
    extend->add_option("--radii", radii, "comma-separated radii > 1");
    extend->add_option("--ext-angles", ext_angles);
    extend->add_option("--rho", rho, "sample the chain at rho z");
    normalize->add_option("--t", norm_times, "comma-separated times");
    plot->add_option("--in", in_dir, "directory with samples.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check)
            return run_check(o);
        if (*chain)
            return run_chain(o);
        if (*extend)
            return run_extend(o, radii, ext_angles, rho);
        if (*plot)
            return run_plot(o, in_dir);
        return run_normalize(o, norm_times);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: spec: " << e.what() << "\n";
        return 2;
    } catch (const parameter_error& e) {
        std::cerr << "error: parameters: " << e.what() << "\n";
        return 2;
    } catch (const normalization_error& e) {
        std::cerr << "error: normalization: " << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const loewner::error& e) {
        std::cerr << "FAIL stage=evaluation witness=" << e.what() << "\n";
        return 1;
    }
}
