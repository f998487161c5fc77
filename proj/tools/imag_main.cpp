#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "imag/channels.hpp"
#include "imag/conversion.hpp"
#include "imag/errors.hpp"
#include "imag/measures.hpp"
#include "imag/numerics.hpp"
#include "imag/state_io.hpp"
#include "imag/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnsupported = 3;

std::string scalar12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

// shortest decimal that round-trips to the same double
std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

imag::MeasureKind parse_kind(const std::string& flag) {
    if (flag == "g") return imag::MeasureKind::Geometric;
    if (flag == "gl") return imag::MeasureKind::GeometricLike;
    throw imag::BadParameter("measure must be g or gl");
}

imag::NoiseFamily parse_family(const std::string& flag) {
    if (flag == "bf") return imag::NoiseFamily::BitFlip;
    if (flag == "pd") return imag::NoiseFamily::PhaseDamping;
    if (flag == "ad") return imag::NoiseFamily::AmplitudeDamping;
    throw imag::BadParameter("channel must be bf, pd or ad");
}

int cmd_measure(const std::string& state_path, const std::string& kind_flag) {
    const imag::MeasureKind kind = parse_kind(kind_flag);
    imag::StateVariant state = imag::load_state_file(state_path);
    const double value = std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, imag::PureState>)
                return imag::measure_pure(s, kind);
            else
                return imag::measure_mixed(s, kind);
        },
        state);
    std::cout << scalar12(value) << "\n";
    return kExitOk;
}

int cmd_decompose(const std::string& state_path, const std::string& mode,
                  const std::string& out_path) {
    imag::DensityMatrix rho = imag::as_density(imag::load_state_file(state_path));
    imag::Ensemble ens;
    if (mode == "optimal")
        ens = imag::optimal_decomposition(rho);
    else if (mode == "equalized")
        ens = imag::equalized_decomposition(rho);
    else
        throw imag::BadParameter("mode must be optimal or equalized");

    const double recon = ens.reconstruction_error(rho);
    const double r = imag::root_fidelity(rho.matrix(), rho.matrix().transpose());
    double roof_gap;
    if (mode == "optimal") {
        double avg = 0.0;
        for (std::size_t j = 0; j < ens.members.size(); ++j)
            avg += ens.weights[j] * ens.members[j].witness();
        roof_gap = std::abs(avg - r);
    } else {
        double avg = 0.0;
        for (std::size_t j = 0; j < ens.members.size(); ++j)
            avg += ens.weights[j] * imag::measure_pure(ens.members[j],
                                                       imag::MeasureKind::GeometricLike);
        roof_gap = std::abs(avg - imag::measure_mixed(rho, imag::MeasureKind::GeometricLike));
    }
    if (recon > 1e-9 || roof_gap > 1e-8) {
        std::cerr << "decomposition assertions failed: reconstruction " << recon << ", roof gap "
                  << roof_gap << "\n";
        return kExitVerifyFail;
    }
    const std::string text = imag::ensemble_to_json(ens).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw imag::ParseError("cannot write " + out_path);
        out << text;
    }
    return kExitOk;
}

int cmd_decay(const std::string& channel_flag, int grid_n, const std::string& out_path,
              bool check) {
    if (grid_n < 2) throw imag::BadParameter("grid must be at least 2");
    const imag::NoiseFamily fam = parse_family(channel_flag);
    std::ostringstream csv;
    csv << "A,param,delta_gl,delta_g\n";
    double max_gap = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double a = static_cast<double>(i) / (grid_n - 1);
        for (int j = 0; j < grid_n; ++j) {
            const double q = static_cast<double>(j) / (grid_n - 1);
            const double dgl =
                imag::decay_closed_form({fam, q}, a, imag::MeasureKind::GeometricLike);
            const double dg = imag::decay_closed_form({fam, q}, a, imag::MeasureKind::Geometric);
            csv << shortest(a) << "," << shortest(q) << "," << shortest(dgl) << ","
                << shortest(dg) << "\n";
            if (check) {
                max_gap = std::max(
                    max_gap,
                    std::abs(dgl - imag::decay_simulated({fam, q}, a,
                                                         imag::MeasureKind::GeometricLike)));
                max_gap = std::max(
                    max_gap, std::abs(dg - imag::decay_simulated(
                                               {fam, q}, a, imag::MeasureKind::Geometric)));
            }
        }
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw imag::ParseError("cannot write " + out_path);
        out << csv.str();
    }
    if (check) std::cout << "max discrepancy " << shortest(max_gap) << "\n";
    return kExitOk;
}

int cmd_convert(const std::string& from_path, const std::string& to_path, double fidelity,
                bool have_fidelity) {
    imag::StateVariant from = imag::load_state_file(from_path);
    const imag::PureState* psi = std::get_if<imag::PureState>(&from);
    if (!psi) {
        std::cerr << "SourceNotPure: conversion probabilities require a pure source\n";
        return kExitUnsupported;
    }
    imag::StateVariant to = imag::load_state_file(to_path);

    if (have_fidelity) {
        const double p =
            imag::stochastic_approx_probability(*psi, imag::as_density(to), fidelity);
        std::cout << "probability " << scalar12(p) << "\n";
        std::cout << "branch " << (p >= 1.0 ? "Deterministic" : "Filtered") << "\n";
        return kExitOk;
    }
    imag::ConversionResult res =
        std::holds_alternative<imag::PureState>(to)
            ? imag::pure_to_pure_probability(*psi, std::get<imag::PureState>(to))
            : imag::pure_to_mixed_probability(*psi, std::get<imag::DensityMatrix>(to));
    std::cout << "probability " << scalar12(res.probability) << "\n";
    std::cout << "branch "
              << (res.branch == imag::ConversionBranch::Deterministic ? "Deterministic"
                                                                      : "Filtered");
    if (res.target_free) std::cout << " (TargetIsFree)";
    std::cout << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, int samples, std::uint64_t seed) {
    std::vector<imag::SuiteReport> reports = imag::run_suites(suite, samples, seed);
    bool ok = true;
    for (const auto& r : reports) {
        std::cout << imag::format_report(r);
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"imaginarity measures, channel decay and state conversion"};
    app.require_subcommand(1);

    std::string state_path, from_path, to_path, out_path;
    std::string kind_flag = "gl", channel_flag, suite = "all", mode = "optimal";
    int grid_n = 101, samples = 100;
    std::uint64_t seed = 0;
    double fidelity = 1.0;
    bool check = false;

    auto* measure = app.add_subcommand("measure", "evaluate a measure on a state file");
    measure->add_option("--state", state_path)->required();
    measure->add_option("--measure", kind_flag)->check(CLI::IsMember({"g", "gl"}));

    auto* decompose = app.add_subcommand("decompose", "emit a pure-state decomposition");
    decompose->add_option("--state", state_path)->required();
    decompose->add_option("--mode", mode)->check(CLI::IsMember({"optimal", "equalized"}));
    decompose->add_option("--out", out_path);

    auto* decay = app.add_subcommand("decay", "emit the decay surface as CSV");
    decay->add_option("--channel", channel_flag)->required()
        ->check(CLI::IsMember({"bf", "pd", "ad"}));
    decay->add_option("--measure", kind_flag)->check(CLI::IsMember({"g", "gl"}));
    decay->add_option("--grid", grid_n);
    decay->add_option("--out", out_path);
    decay->add_flag("--check", check);

    auto* convert = app.add_subcommand("convert", "conversion probability between states");
    convert->add_option("--from", from_path)->required();
    convert->add_option("--to", to_path)->required();
    auto* fid_opt = convert->add_option("--fidelity", fidelity);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"roof", "monotonicity", "decay", "conversion", "all"}));
    verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*measure) return cmd_measure(state_path, kind_flag);
        if (*decompose) return cmd_decompose(state_path, mode, out_path);
        if (*decay) return cmd_decay(channel_flag, grid_n, out_path, check);
        if (*convert) return cmd_convert(from_path, to_path, fidelity, fid_opt->count() > 0);
        if (*verify) return cmd_verify(suite, samples, seed);
    } catch (const imag::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
