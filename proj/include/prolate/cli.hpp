#ifndef PROLATE_CLI_HPP
#define PROLATE_CLI_HPP

// Command-line front end: spectra, PSWF tables, boundary-value extraction,
// boundary-condition classification, and the invariant verification suite.
// Exit codes: 0 success, 2 input validation failure, 3 numerical
// non-convergence.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prolate/errors.hpp"
#include "prolate/extension_solver.hpp"
#include "prolate/fourier_commutator.hpp"
#include "prolate/io.hpp"
#include "prolate/legendre_backend.hpp"
#include "prolate/verify.hpp"

namespace prolate::cli {

struct CommonOpts {
    double a = 1.0;
    std::string unitary = "identity";
    int modes = 5;
    int truncation = 0;  // 0 = automatic
    double range_min = 0.0;
    bool has_range_min = false;
    double range_max = 0.0;
    bool has_range_max = false;
    double tol = 1e-10;
    std::string format = "json";
    std::string out;
    std::string input;
    unsigned long long seed = 12345;
    bool quick = false;
    int grid = 0;
    std::string functions_out;
};

namespace detail {

inline void emit(const CommonOpts& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    } else {
        write_text_file(o.out, payload);
    }
}

inline int fail(const CommonOpts& o, const std::string& type, const std::string& message,
                int code) {
    if (o.format == "json") {
        JsonWriter w;
        w.begin_object().key("error").begin_object();
        w.key("type").value(type).key("message").value(message).key("exit_code").value(code);
        w.end_object().end_object();
        std::cerr << w.str() << "\n";
    } else {
        std::cerr << "error (" << type << "): " << message << "\n";
    }
    return code;
}

// key=value lines, '#' comments; flags given on the command line override.
inline std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") path = args[i + 1];
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::vector<std::string> merged;
    if (!args.empty()) merged.push_back(args[0]);  // subcommand name first
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        // an explicit command-line flag overrides the config entry
        bool overridden = false;
        for (const auto& arg : args)
            if (arg == "--" + key) overridden = true;
        if (overridden) continue;
        merged.push_back("--" + key);
        merged.push_back(val);
    }
    for (std::size_t i = 1; i < args.size(); ++i) merged.push_back(args[i]);
    return merged;
}

inline std::string spectrum_json(const CommonOpts& o, const UnitaryMatrix2& u,
                                 const std::vector<ScanRoot>& roots) {
    JsonWriter w;
    w.begin_object();
    w.key("a").value(o.a);
    w.key("unitary").raw(unitary_json(u));
    w.key("eigenvalues").begin_array();
    for (const auto& r : roots) {
        w.begin_object();
        w.key("lambda").value(r.lambda);
        w.key("multiplicity").value(r.multiplicity);
        w.key("boundary_residuals").begin_array().value(r.boundary_residual).value(r.det_residual).end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

inline std::string spectrum_csv(const std::vector<ScanRoot>& roots) {
    std::string s = "k,lambda,multiplicity,residual\n";
    int k = 1;
    for (const auto& r : roots) {
        for (int m = 0; m < r.multiplicity; ++m) {
            s += std::to_string(k++) + "," + fmt_double(r.lambda) + "," +
                 std::to_string(r.multiplicity) + "," + fmt_double(r.boundary_residual) + "\n";
        }
    }
    return s;
}

inline std::vector<ScanRoot> galerkin_as_roots(const std::vector<EigenPair>& modes) {
    std::vector<ScanRoot> roots;
    for (const auto& m : modes) {
        ScanRoot r;
        r.lambda = m.lambda;
        r.multiplicity = 1;
        r.det_residual = m.residual;
        r.boundary_residual = m.residual;
        roots.push_back(r);
    }
    return roots;
}

inline int run_spectrum(const CommonOpts& o) {
    const UnitaryMatrix2 u = parse_unitary(o.unitary);
    if (o.modes < 1) throw ValidationError("--modes must be >= 1");
    std::vector<ScanRoot> roots;
    if (u.is_identity()) {
        const std::size_t n =
            (o.truncation > 0) ? static_cast<std::size_t>(o.truncation)
                               : static_cast<std::size_t>(o.modes) + 30;
        roots = galerkin_as_roots(prolate_spectrum(n, o.a, static_cast<std::size_t>(o.modes)));
    } else {
        // window: the distinguished extension's Galerkin values bound the
        // search, negatives live in [-100/a^2, 0)
        const auto guide = prolate_spectrum(static_cast<std::size_t>(o.modes) + 32, o.a,
                                            static_cast<std::size_t>(o.modes) + 2);
        const double lo = o.has_range_min ? o.range_min : -100.0 / (o.a * o.a);
        const double hi = o.has_range_max ? o.range_max : guide.back().lambda + 2.0 / (o.a * o.a);
        roots = eigenvalues_scan(u, o.a, lo, hi, o.tol);
        std::vector<ScanRoot> first;
        int count = 0;
        for (const auto& r : roots) {
            if (count >= o.modes) break;
            first.push_back(r);
            count += r.multiplicity;
        }
        roots = first;
    }
    emit(o, (o.format == "csv") ? spectrum_csv(roots) : spectrum_json(o, u, roots));
    return 0;
}

inline int run_pswf(const CommonOpts& o) {
    if (o.modes < 1) throw ValidationError("--modes must be >= 1");
    const std::size_t n = (o.truncation > 0) ? static_cast<std::size_t>(o.truncation)
                                             : static_cast<std::size_t>(o.modes) + 30;
    const auto modes = prolate_spectrum(n, o.a, static_cast<std::size_t>(o.modes));

    std::vector<double> ts;
    if (o.grid > 0) {
        for (int i = 0; i < o.grid; ++i)
            ts.push_back(-o.a + 2.0 * o.a * (i + 0.5) / o.grid);
    }

    if (o.format == "csv") {
        std::string s = "k,lambda_k,residual\n";
        for (std::size_t k = 0; k < modes.size(); ++k)
            s += std::to_string(k + 1) + "," + fmt_double(modes[k].lambda) + "," +
                 fmt_double(modes[k].residual) + "\n";
        emit(o, s);
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("a").value(o.a);
        w.key("truncation").value(n);
        w.key("modes").begin_array();
        for (std::size_t k = 0; k < modes.size(); ++k) {
            w.begin_object();
            w.key("k").value(k + 1);
            w.key("lambda").value(modes[k].lambda);
            w.key("residual").value(modes[k].residual);
            w.end_object();
        }
        w.end_array();
        if (!ts.empty()) {
            w.key("samples").begin_object();
            w.key("t").begin_array();
            for (double t : ts) w.value(t);
            w.end_array();
            w.key("chi").begin_array();
            for (const auto& m : modes) {
                w.begin_array();
                for (double t : ts) w.value(m.eigenfunction.eval(t).first);
                w.end_array();
            }
            w.end_array();
            w.end_object();
        }
        w.end_object();
        emit(o, w.str());
    }

    if (!o.functions_out.empty()) {
        if (ts.empty())
            throw ValidationError("--functions-out requires --grid");
        std::string s = "t";
        for (std::size_t k = 0; k < modes.size(); ++k) s += ",chi_" + std::to_string(k + 1);
        s += "\n";
        for (double t : ts) {
            s += fmt_double(t);
            for (const auto& m : modes) s += "," + fmt_double(m.eigenfunction.eval(t).first);
            s += "\n";
        }
        write_text_file(o.functions_out, s);
    }
    return 0;
}

inline int run_boundary(const CommonOpts& o) {
    if (o.input.empty()) throw ValidationError("boundary: --input file required");
    std::vector<double> t;
    std::vector<cplx> y;
    read_samples_csv(o.input, t, y);
    const double a = o.a;
    if (t.front() <= -a || t.back() >= a)
        throw ValidationError("boundary: samples must lie strictly inside (-a, a)");

    const auto minus = boundary_values_from_samples(t, y, Endpoint::minus_a, a);
    const auto plus = boundary_values_from_samples(t, y, Endpoint::plus_a, a);

    if (o.format == "csv") {
        std::string s = "endpoint,b_re,b_im,c_re,c_im,b_error,c_error\n";
        s += "minus," + fmt_double(minus.b.real()) + "," + fmt_double(minus.b.imag()) + "," +
             fmt_double(minus.c.real()) + "," + fmt_double(minus.c.imag()) + "," +
             fmt_double(minus.b_error) + "," + fmt_double(minus.c_error) + "\n";
        s += "plus," + fmt_double(plus.b.real()) + "," + fmt_double(plus.b.imag()) + "," +
             fmt_double(plus.c.real()) + "," + fmt_double(plus.c.imag()) + "," +
             fmt_double(plus.b_error) + "," + fmt_double(plus.c_error) + "\n";
        emit(o, s);
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("a").value(o.a);
        w.key("minus").begin_object();
        w.key("b").value(minus.b).key("c").value(minus.c);
        w.key("b_error").value(minus.b_error).key("c_error").value(minus.c_error);
        w.end_object();
        w.key("plus").begin_object();
        w.key("b").value(plus.b).key("c").value(plus.c);
        w.key("b_error").value(plus.b_error).key("c_error").value(plus.c_error);
        w.end_object();
        w.end_object();
        emit(o, w.str());
    }
    return 0;
}

inline int run_classify(const CommonOpts& o) {
    const UnitaryMatrix2 u = parse_unitary(o.unitary);
    const auto b = boundary_condition_matrix(u);
    const auto s = subspace_from_unitary(u);
    const bool so = is_j_self_orthogonal(s);
    if (o.format == "csv") {
        std::string out = "row,entry1_re,entry1_im,entry2_re,entry2_im,entry3_re,entry3_im,entry4_re,entry4_im\n";
        auto row = [&](const std::string& name, const Vec4& v) {
            out += name;
            for (int i = 0; i < 4; ++i)
                out += "," + fmt_double(v[i].real()) + "," + fmt_double(v[i].imag());
            out += "\n";
        };
        row("B1", b.rows[0]);
        row("B2", b.rows[1]);
        row("v1", s.row(0));
        row("v2", s.row(1));
        emit(o, out);
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("unitary").raw(unitary_json(u));
        auto vec4 = [&](const Vec4& v) {
            w.begin_array();
            for (int i = 0; i < 4; ++i) w.value(v[i]);
            w.end_array();
        };
        w.key("boundary_condition_matrix").begin_array();
        vec4(b.rows[0]);
        vec4(b.rows[1]);
        w.end_array();
        w.key("subspace_basis").begin_array();
        vec4(s.row(0));
        vec4(s.row(1));
        w.end_array();
        w.key("j_self_orthogonal").value(so);
        w.end_object();
        emit(o, w.str());
    }
    return 0;
}

inline int run_verify(const CommonOpts& o) {
    VerifyConfig cfg;
    cfg.a = o.a;
    cfg.seed = o.seed;
    cfg.quick = o.quick;
    bool all_pass = true;
    std::vector<CheckResult> results;
    for (const auto& check : verification_registry()) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = check.fn(cfg);
        } catch (const std::exception& e) {
            r = {check.id, false, 0.0, 0.0, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (" << fmt_double(secs)
                  << " s)\n";
        all_pass = all_pass && r.pass;
        results.push_back(std::move(r));
    }
    if (o.format == "csv") {
        std::string s = "id,pass,measured,tolerance\n";
        for (const auto& r : results)
            s += r.id + "," + (r.pass ? "1" : "0") + "," + fmt_double(r.measured) + "," +
                 fmt_double(r.tolerance) + "\n";
        emit(o, s);
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("a").value(o.a);
        w.key("checks").begin_array();
        for (const auto& r : results) {
            w.begin_object();
            w.key("id").value(r.id);
            w.key("pass").value(r.pass);
            w.key("measured").value(r.measured);
            w.key("tolerance").value(r.tolerance);
            if (!r.detail.empty()) w.key("detail").value(r.detail);
            w.end_object();
        }
        w.end_array();
        w.key("all_pass").value(all_pass);
        w.end_object();
        emit(o, w.str());
    }
    return all_pass ? 0 : 3;
}

}  // namespace detail

inline int dispatch(std::vector<std::string> args) {
    CommonOpts o;
    CLI::App app{"self-adjoint extensions of the prolate spheroid operator"};
    app.require_subcommand(1);

    std::string config_path;  // handled by preprocessing; registered so CLI11 accepts it

    auto add_common = [&](CLI::App* sub, bool with_unitary) {
        sub->add_option("--a", o.a, "half-width of the interval")->check(CLI::PositiveNumber);
        if (with_unitary)
            sub->add_option("--unitary", o.unitary,
                            "identity | neg-identity | swap | 8 numbers re,im per entry");
        sub->add_option("--format", o.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--config", config_path, "key=value config file; flags override");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of the extension L_U");
    add_common(spectrum, true);
    spectrum->add_option("--modes", o.modes, "number of eigenvalues");
    spectrum->add_option("--truncation", o.truncation, "Galerkin truncation (0 = auto)");
    spectrum->add_option("--range-min", o.range_min, "scan window lower end")
        ->each([&](const std::string&) { o.has_range_min = true; });
    spectrum->add_option("--range-max", o.range_max, "scan window upper end")
        ->each([&](const std::string&) { o.has_range_max = true; });
    spectrum->add_option("--tol", o.tol, "eigenvalue tolerance")->check(CLI::PositiveNumber);

    CLI::App* pswf = app.add_subcommand("pswf", "prolate spheroidal wave functions (U = I)");
    add_common(pswf, false);
    pswf->add_option("--modes", o.modes, "number of eigenpairs");
    pswf->add_option("--truncation", o.truncation, "Galerkin truncation (0 = auto)");
    pswf->add_option("--grid", o.grid, "sample eigenfunctions on this many uniform points");
    pswf->add_option("--functions-out", o.functions_out, "CSV file for sampled eigenfunctions");

    CLI::App* boundary = app.add_subcommand("boundary", "generalized boundary values of a sampled function");
    add_common(boundary, false);
    boundary->add_option("--input", o.input, "CSV of t,re[,im] samples")->required();

    CLI::App* classify = app.add_subcommand("classify", "boundary conditions B(U) and subspace basis");
    add_common(classify, true);

    CLI::App* verify = app.add_subcommand("verify", "run all module invariant suites");
    add_common(verify, false);
    verify->add_option("--seed", o.seed, "random seed for property checks");
    verify->add_flag("--quick", o.quick, "reduced sample counts");

    try {
        args = detail::apply_config_file(args);
    } catch (const ValidationError& e) {
        return detail::fail(o, "ValidationError", e.what(), 2);
    }

    std::vector<const char*> argv;
    argv.push_back("prolate");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return detail::fail(o, "UsageError", e.what(), 2);
    }

    try {
        if (spectrum->parsed()) return detail::run_spectrum(o);
        if (pswf->parsed()) return detail::run_pswf(o);
        if (boundary->parsed()) return detail::run_boundary(o);
        if (classify->parsed()) return detail::run_classify(o);
        if (verify->parsed()) return detail::run_verify(o);
    } catch (const ValidationError& e) {
        return detail::fail(o, "ValidationError", e.what(), 2);
    } catch (const NumericalError& e) {
        return detail::fail(o, "NumericalError", e.what(), 3);
    }
    return detail::fail(o, "UsageError", "no subcommand given", 2);
}

}  // namespace prolate::cli

#endif  // PROLATE_CLI_HPP
