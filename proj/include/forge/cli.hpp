#pragma once

// Command implementations behind the forge executable. Each command writes
// human-readable output to `out` and returns a process exit code.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "forge/coloring.hpp"
#include "forge/construct.hpp"
#include "forge/errors.hpp"
#include "forge/homology.hpp"
#include "forge/io.hpp"
#include "forge/zoo.hpp"

namespace forge::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2, kResamplingCap = 3 };

inline constexpr std::size_t kDefaultVerifyFaceLimit = 2'000'000;

struct RunConfig {
    std::string command;
    int d = 2;
    std::string m;                    // single cyclic order
    std::vector<std::string> orders;  // or a list of them
    std::string method = "greedy";
    std::optional<std::uint64_t> seed;
    std::string input;
    std::string output;
    std::string marks_output;
    std::string coloring_output;
    std::string report_output;
    std::string csv_output;
    std::optional<int> degree;
    bool reduced = false;
    std::vector<int> d_list;
    std::vector<std::string> m_list;
    std::size_t verify_face_limit = kDefaultVerifyFaceLimit;
    std::size_t max_rounds = 1'000'000;
    bool timing = true;
    std::size_t n = 0;
    std::vector<long long> set;
    std::optional<std::size_t> faces;
    std::optional<double> p;
    int verbosity = 0;
};

/// Accepts plain decimal digits of any length, or "b^e" with decimal b and e.
inline mpz_class parse_order(const std::string& text) {
    auto digits = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("invalid group order '" + text + "'");
        return mpz_class(s);
    };
    const auto caret = text.find('^');
    if (caret == std::string::npos) return digits(text);
    const mpz_class base = digits(text.substr(0, caret));
    const mpz_class exp = digits(text.substr(caret + 1));
    if (!exp.fits_ulong_p() || exp > 1'000'000) throw InputError("exponent too large in '" + text + "'");
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    return r;
}

inline double log2_of(const mpz_class& x) {
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log2(mant) + static_cast<double>(e);
}

/// --seed wins, then FORGE_SEED, then 0.
inline std::uint64_t resolve_seed(const RunConfig& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (const char* env = std::getenv("FORGE_SEED"); env && *env) {
        const std::string s(env);
        if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 20)
            throw InputError("FORGE_SEED must be a nonnegative integer");
        try {
            return std::stoull(s);
        } catch (const std::out_of_range&) {
            throw InputError("FORGE_SEED out of range");
        }
    }
    return 0;
}

inline void validate(const RunConfig& cfg) {
    const auto& c = cfg.command;
    if (c == "build") {
        if (cfg.d < 2) throw InputError("build: -d must be at least 2");
        if (cfg.m.empty() == cfg.orders.empty()) throw InputError("build: give exactly one of -m and --orders");
        if (cfg.output.empty()) throw InputError("build: -o is required");
    } else if (c == "homology" || c == "reduce") {
        if (cfg.input.empty()) throw InputError(c + ": input file is required");
        if (cfg.degree && *cfg.degree < 0) throw InputError("homology: -i must be nonnegative");
        if (c == "reduce") parse_method(cfg.method);
    } else if (c == "report") {
        for (int d : cfg.d_list)
            if (d < 2) throw InputError("report: every d must be at least 2");
        parse_method(cfg.method);
    } else if (c == "sum-complex") {
        if (cfg.n == 0) throw InputError("sum-complex: --n is required");
        if (cfg.set.empty()) throw InputError("sum-complex: --set is required");
    } else if (c == "random") {
        if (cfg.n == 0) throw InputError("random: --n is required");
        if (cfg.faces.has_value() == cfg.p.has_value()) throw InputError("random: give exactly one of --faces and --p");
    } else {
        throw InputError("unknown command '" + c + "'");
    }
}

inline void emit_complex(const RunConfig& cfg, const SimplicialComplex& x, std::ostream& out) {
    if (cfg.output.empty())
        out << complex_to_json(x).dump() << "\n";
    else
        write_complex_file(cfg.output, x);
}

inline int cmd_build(const RunConfig& cfg, std::ostream& out) {
    std::vector<mpz_class> orders;
    if (!cfg.m.empty()) orders.push_back(parse_order(cfg.m));
    for (const auto& s : cfg.orders) orders.push_back(parse_order(s));
    mpz_class size = 1;
    for (const auto& m : orders) {
        if (m < 2) throw InputError("build: every cyclic order must be at least 2");
        size *= m;
    }
    const MarkedComplex x = realize_group_marked(cfg.d, orders);
    const ConstructionConstants k = constants(cfg.d);
    write_complex_file(cfg.output, x.complex);
    const std::string marks_path = cfg.marks_output.empty() ? cfg.output + ".marks.json" : cfg.marks_output;
    write_text_file(marks_path, marks_to_json(x.marks, k).dump() + "\n");
    const auto bound = static_cast<double>(k.K) * log2_of(size);
    out << "vertices " << x.complex.num_vertices() << "\n"
        << "max_degree " << degree_profile(x.complex).delta_max << "\n"
        << "K " << k.K << "\n"
        << "vertex_bound " << std::fixed << std::setprecision(1) << bound << std::defaultfloat << "\n"
        << "torsion " << GroupStructure::from_cyclic(0, orders).to_string() << "\n";
    return kOk;
}

inline int cmd_homology(const RunConfig& cfg, std::ostream& out) {
    const auto x = read_complex_file(cfg.input);
    if (cfg.degree) {
        out << homology(x, *cfg.degree, cfg.reduced).to_string() << "\n";
        return kOk;
    }
    const auto all = homology_all(x, cfg.reduced);
    for (std::size_t i = 0; i < all.size(); ++i) out << "H_" << i << " = " << all[i].to_string() << "\n";
    return kOk;
}

inline int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
    const auto x = read_complex_file(cfg.input);
    ReduceOptions opt;
    opt.method = parse_method(cfg.method);
    opt.seed = resolve_seed(cfg);
    opt.max_rounds = cfg.max_rounds;
    opt.verify_homology = x.total_faces() <= cfg.verify_face_limit;
    const Reduction r = reduce(x, opt);
    if (!cfg.output.empty()) write_complex_file(cfg.output, r.complex);
    if (!cfg.coloring_output.empty()) write_text_file(cfg.coloring_output, coloring_to_json(r.coloring).dump() + "\n");
    const std::string report = report_to_json(r.report).dump(2) + "\n";
    if (cfg.report_output.empty()) {
        out << report;
    } else {
        write_text_file(cfg.report_output, report);
        out << "vertices " << r.report.input_vertices << " -> " << r.report.output_vertices << " ("
            << (r.report.verified ? "verified" : "unverified") << ")\n";
    }
    return kOk;
}

struct ReportCell {
    int d = 0;
    std::string m;
    std::size_t vertices_initial = 0;
    std::size_t vertices_reduced = 0;
    std::size_t delta_initial = 0;
    std::size_t num_colors = 0;
    std::string torsion_ok;  // yes, no, unverified or error
    double seconds = 0;
    std::string message;
};

inline ReportCell report_cell(int d, const std::string& m_text, Method method, std::uint64_t seed,
                              const RunConfig& cfg) {
    ReportCell cell;
    cell.d = d;
    cell.m = m_text;
    const auto start = std::chrono::steady_clock::now();
    try {
        const mpz_class m = parse_order(m_text);
        const auto x = assemble_cyclic(d, m);
        cell.vertices_initial = x.num_vertices();
        cell.delta_initial = degree_profile(x).delta_max;
        ReduceOptions opt{method, seed, cfg.max_rounds, x.total_faces() <= cfg.verify_face_limit};
        const Reduction r = reduce(x, opt);
        cell.vertices_reduced = r.report.output_vertices;
        cell.num_colors = r.report.num_colors;
        if (!r.report.verified)
            cell.torsion_ok = "unverified";
        else if (r.report.torsion_before == GroupStructure::cyclic(m))
            cell.torsion_ok = "yes";
        else {
            cell.torsion_ok = "no";
            cell.message = "torsion is " + r.report.torsion_before.to_string();
        }
    } catch (const VerificationError& e) {
        cell.torsion_ok = "no";
        cell.message = e.what();
    } catch (const std::exception& e) {
        cell.torsion_ok = "error";
        cell.message = e.what();
    }
    cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

inline std::string report_csv(const std::vector<ReportCell>& cells, bool timing) {
    std::ostringstream csv;
    csv << "d,m,vertices_initial,vertices_reduced,delta_initial,num_colors,torsion_ok,seconds\n";
    for (const auto& c : cells) {
        csv << c.d << "," << c.m << "," << c.vertices_initial << "," << c.vertices_reduced << "," << c.delta_initial
            << "," << c.num_colors << "," << c.torsion_ok << ",";
        if (timing)
            csv << std::fixed << std::setprecision(3) << c.seconds << std::defaultfloat;
        else
            csv << 0;
        csv << "\n";
    }
    return csv.str();
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
    const Method method = parse_method(cfg.method);
    const std::uint64_t seed = resolve_seed(cfg);
    std::vector<ReportCell> cells;
    for (int d : cfg.d_list)
        for (const auto& m : cfg.m_list) cells.push_back(report_cell(d, m, method, seed, cfg));

    out << std::left << std::setw(4) << "d" << std::setw(24) << "m" << std::right << std::setw(10) << "|V(X)|"
        << std::setw(12) << "|V((X,c))|" << std::setw(8) << "Delta" << std::setw(8) << "colors" << "  torsion\n";
    bool failed = false;
    for (const auto& c : cells) {
        out << std::left << std::setw(4) << c.d << std::setw(24) << c.m << std::right << std::setw(10)
            << c.vertices_initial << std::setw(12) << c.vertices_reduced << std::setw(8) << c.delta_initial
            << std::setw(8) << c.num_colors << "  " << c.torsion_ok;
        if (!c.message.empty()) out << " (" << c.message << ")";
        out << "\n";
        failed = failed || c.torsion_ok == "no" || c.torsion_ok == "error";
    }
    if (!cfg.csv_output.empty()) write_text_file(cfg.csv_output, report_csv(cells, cfg.timing));
    return failed ? kVerificationFailed : kOk;
}

inline int cmd_sum_complex(const RunConfig& cfg, std::ostream& out) {
    emit_complex(cfg, sum_complex({cfg.n, cfg.set}), out);
    return kOk;
}

inline int cmd_random(const RunConfig& cfg, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(cfg);
    const auto x = cfg.faces ? random_complex(cfg.n, cfg.d, *cfg.faces, seed) : random_complex_p(cfg.n, cfg.d, *cfg.p, seed);
    emit_complex(cfg, x, out);
    return kOk;
}

/// Exit code and message for an exception thrown by a command.
inline int exit_code_for(std::exception_ptr e, std::ostream& err) {
    try {
        std::rethrow_exception(e);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const StructureError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const ResamplingCapExceeded& e) {
        err << "resampling cap exceeded: " << e.what() << "\n";
        return kResamplingCap;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailed;
    }
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
    const auto& c = cfg.command;
    if (c == "build") return cmd_build(cfg, out);
    if (c == "homology") return cmd_homology(cfg, out);
    if (c == "reduce") return cmd_reduce(cfg, out);
    if (c == "report") return cmd_report(cfg, out);
    if (c == "sum-complex") return cmd_sum_complex(cfg, out);
    return cmd_random(cfg, out);
}

/// Validates and dispatches; library exceptions become exit codes. With
/// verbosity > 0 the elapsed time goes to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        validate(cfg);
        code = dispatch(cfg, out);
    } catch (...) {
        code = exit_code_for(std::current_exception(), err);
    }
    if (cfg.verbosity > 0)
        err << cfg.command << ": exit " << code << " after "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
    return code;
}

}  // namespace forge::cli
