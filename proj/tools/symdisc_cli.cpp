// symdisc: command-line front end. Every subcommand prints a JSON report
// (schema "symdisc/1") unless --format asks for csv or text.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symdisc/symdisc.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace symdisc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitInconclusive = 3;

struct RunConfig {
    std::map<std::string, double> tol{{"boundary", tol::boundary},
                                      {"separation", tol::separation},
                                      {"rank", tol::rank},
                                      {"psd", tol::psd},
                                      {"refine", tol::refine}};
    std::uint64_t seed = 20240611;
    std::uint64_t eval_budget = 0;  // 0: the command's own default
    std::string format = "json";
    unsigned workers = 0;
};

// Numbers are rounded to 15 significant digits before serialization so that
// reports are stable across platforms.
json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(format_real(x).c_str(), nullptr);
}
json cnum(Complex z) { return json::array({num(z.real()), num(z.imag())}); }
json point_json(const ComplexPoint& p) {
    json a = json::array();
    for (const auto& z : p) a.push_back(cnum(z));
    return a;
}
json matrix_json(const Matrix& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(cnum(M(i, j)));
        rows.push_back(r);
    }
    return rows;
}

ComplexPoint parse_point(const std::string& s) { return ComplexPoint(parse_complex_list(s)); }

/// Rows separated by ';', entries by ','.
Matrix parse_matrix(const std::string& s) {
    std::vector<std::vector<Complex>> rows;
    std::size_t start = 0;
    for (;;) {
        const std::size_t semi = s.find(';', start);
        rows.push_back(parse_complex_list(s.substr(start, semi == std::string::npos ? std::string::npos : semi - start)));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix M(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw Error(ErrorKind::InvalidArgument, "matrix must be square");
        for (Eigen::Index j = 0; j < n; ++j) M(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    require_square(M, "matrix");
    return M;
}

json envelope(const std::string& command, const std::string& paper_ref, json result) {
    json j;
    j["schema"] = "symdisc/1";
    j["command"] = command;
    j["paper_ref"] = paper_ref;
    j["result"] = std::move(result);
    return j;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

void emit(const json& report, const RunConfig& cfg) {
    if (cfg.format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    if (cfg.format == "csv") {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << k << ",\"" << v << "\"\n";
    } else {
        for (const auto& [k, v] : rows) std::cout << k << ": " << v << "\n";
    }
}

// ---------------------------------------------------------------------------
// Selftests

struct SelfTest {
    std::vector<std::pair<std::string, bool>> checks;
    void check(const std::string& name, bool ok) { checks.emplace_back(name, ok); }
    bool passed() const {
        for (const auto& c : checks)
            if (!c.second) return false;
        return true;
    }
    json report(const std::string& command) const {
        json arr = json::array();
        for (const auto& [n, ok] : checks) arr.push_back({{"check", n}, {"passed", ok}});
        json r;
        r["schema"] = "symdisc/1";
        r["command"] = command;
        r["selftest"] = passed();
        r["checks"] = arr;
        return r;
    }
};

bool close(double a, double b, double t) { return std::abs(a - b) <= t; }

// ---------------------------------------------------------------------------
// Subcommands

struct Command {
    std::string name;
    CLI::App* app = nullptr;
    bool selftest = false;
    std::function<json(const RunConfig&)> run;
    std::function<void(SelfTest&)> tests;
    std::function<int(const RunConfig&)> custom;  // commands that manage their own output
};

std::string need(const std::string& value, const char* flag) {
    if (value.empty()) throw CLI::RequiredError(flag);
    return value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerics on the symmetrized polydisc and the spectral ball"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file; command-line flags take precedence");

    RunConfig cfg;
    std::vector<std::string> tol_overrides;
    app.add_option("--seed", cfg.seed, "random seed")->envname("SYMDISC_SEED");
    app.add_option("--budget", cfg.eval_budget, "evaluation budget (0: command default)");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--workers", cfg.workers, "worker threads (0: available parallelism)");
    app.add_option("--tol", tol_overrides, "tolerance override name=value (boundary, separation, rank, psd, refine)");

    std::vector<std::unique_ptr<Command>> commands;
    auto add = [&](const std::string& name, const std::string& desc) -> Command& {
        commands.push_back(std::make_unique<Command>());
        auto& c = *commands.back();
        c.name = name;
        c.app = app.add_subcommand(name, desc);
        c.app->add_flag("--selftest", c.selftest, "run the built-in checks for this command");
        return c;
    };

    // membership
    std::string m_point;
    int m_n = 0;
    {
        auto& c = add("membership", "decide z in G_n by the Cohn rule");
        c.app->add_option("--point", m_point, "z_1,...,z_n");
        c.app->add_option("--n", m_n, "dimension (checked against the point)");
        c.run = [&](const RunConfig& rc) {
            const auto z = parse_point(need(m_point, "--point"));
            if (m_n != 0 && static_cast<std::size_t>(m_n) != z.size()) throw Error(ErrorKind::InvalidArgument, "--n does not match the point");
            const auto rep = root_location(poly_from_point(z), rc.tol.at("boundary"));
            json r;
            r["n"] = z.size();
            r["inside"] = rep.inside;
            r["location"] = rep.location == RootLocation::Inside ? "inside" : rep.location == RootLocation::Boundary ? "boundary" : "outside";
            r["h"] = num(minkowski_h(z));
            r["margin"] = num(rep.margin);
            r["steps"] = rep.steps;
            return envelope("membership", "Cohn rule: all roots of zeta^n + sum (-1)^j z_j zeta^(n-j) in D", r);
        };
        c.tests = [](SelfTest& t) {
            t.check("origin of G_3 is inside", in_Gn(ComplexPoint{0.0, 0.0, 0.0}));
            t.check("(2, 0) is outside G_2", !in_Gn(ComplexPoint{2.0, 0.0}));
            t.check("sigma of (0.5, -0.5) is inside", in_Gn(elem_sym(ComplexPoint{0.5, -0.5})));
            t.check("sigma of (1, 0) is not inside", !in_Gn(elem_sym(ComplexPoint{1.0, 0.0})));
        };
    }

    // minkowski
    std::string h_point;
    {
        auto& c = add("minkowski", "Minkowski function h_{G_n}(z) = max |roots|");
        c.app->add_option("--point", h_point, "z_1,...,z_n");
        c.run = [&](const RunConfig&) {
            const auto z = parse_point(need(h_point, "--point"));
            json r;
            r["n"] = z.size();
            r["h"] = num(minkowski_h(z));
            r["h_bisection"] = num(minkowski_h_bisect(z));
            return envelope("minkowski", "h_{G_n}(sigma(xi)) = max |xi_j|", r);
        };
        c.tests = [](SelfTest& t) {
            t.check("h(0) = 0", minkowski_h(ComplexPoint{0.0, 0.0}) == 0.0);
            const ComplexPoint xi{Complex{0.3, 0.1}, Complex{-0.5, 0.2}, Complex{0.1, -0.7}};
            t.check("h(sigma(xi)) = max |xi|", close(minkowski_h(elem_sym(xi)), std::abs(xi[2]), 1e-10));
            t.check("bisection agrees", close(minkowski_h_bisect(elem_sym(xi)), std::abs(xi[2]), 1e-10));
        };
    }

    // kernel
    std::string k_lam, k_mu;
    {
        auto& c = add("kernel", "Bergman kernel of G_n at sigma(lambda), sigma(mu)");
        c.app->add_option("--lambda", k_lam, "lambda_1,...,lambda_n in D");
        c.app->add_option("--mu", k_mu, "mu_1,...,mu_n in D");
        c.run = [&](const RunConfig& rc) {
            const auto lam = parse_point(need(k_lam, "--lambda"));
            const auto mu = parse_point(need(k_mu, "--mu"));
            const Complex K = kernel_Gn(lam, mu, rc.tol.at("separation"));
            json r;
            r["n"] = lam.size();
            r["value"] = cnum(K);
            r["abs"] = num(std::abs(K));
            if (lam.size() == 2) r["closed_form"] = cnum(kernel_G2_closed(lam[0], lam[1], mu[0], mu[1]));
            return envelope("kernel", "K_{G_n}(sigma(lambda), sigma(mu)) = det[(1 - lambda_j conj mu_k)^-2] / (pi^n Delta(lambda) conj Delta(mu))", r);
        };
        c.tests = [](SelfTest& t) {
            const ComplexPoint l{Complex{0.2, 0.1}, Complex{-0.3, 0.4}}, m{Complex{0.5, -0.1}, Complex{0.1, 0.6}};
            const Complex a = kernel_Gn(l, m), b = kernel_Gn(m, l);
            t.check("hermitian symmetry", std::abs(a - std::conj(b)) <= 1e-12 * std::abs(a));
            t.check("n = 2 closed form", std::abs(a - kernel_G2_closed(l[0], l[1], m[0], m[1])) <= 1e-10 * std::abs(a));
            t.check("diagonal is positive", kernel_Gn(l, l).real() > 0.0);
        };
    }

    // kernel-zero
    {
        auto& c = add("kernel-zero", "explicit zero of the Bergman kernel of G_3");
        c.run = [&](const RunConfig& rc) {
            KernelZeroOptions o;
            o.seed = rc.seed;
            const auto w = construct_kernel_zero_G3(o);
            json r;
            r["lambda"] = point_json(w.lam);
            r["mu"] = point_json(w.mu);
            r["kernel_value"] = cnum(w.kernel_value);
            r["normalized_abs"] = num(w.normalized_abs);
            r["local_scale"] = num(w.local_scale);
            r["quad_residual"] = num(w.quad_residual);
            r["min_separation"] = num(w.min_separation);
            r["f3_circle_max"] = num(w.f3_circle_max);
            r["eps"] = num(w.eps);
            return envelope("kernel-zero", "K_{G_3} vanishes: quadratic a(nu) z^2 - b(nu) z + 2 c(nu) = 0 with |z| < 1", r);
        };
        c.tests = [](SelfTest& t) {
            const auto q = abc(nu0());
            const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
            t.check("a(nu_0)", std::abs(q.a - (3 * s3 - 5) * unit(kPi / 3)) < 1e-12);
            t.check("b(nu_0)", std::abs(q.b - (6 * s2 - 3 * s6) * unit(kPi / 12)) < 1e-12);
            t.check("c(nu_0)", std::abs(q.c - (2 * s3 - 3) * unit(-kPi / 6)) < 1e-12);
            const Complex z0 = z0_closed();
            t.check("|z_0| < 1", std::abs(z0) > 0.0 && std::abs(z0) < 1.0);
            t.check("z_0 solves the quadratic", quad_residual(q, z0) < 1e-12);
        };
    }

    // cyclicity
    std::string c_matrix;
    {
        auto& c = add("cyclicity", "six equivalent cyclicity criteria");
        c.app->add_option("--matrix", c_matrix, "rows separated by ';', entries by ','");
        c.run = [&](const RunConfig& rc) {
            CyclicityOptions o;
            o.seed = rc.seed;
            o.rank_tol = rc.tol.at("rank");
            const auto v = cyclicity_criteria(parse_matrix(need(c_matrix, "--matrix")), o);
            json r;
            r["consensus"] = v.consensus;
            r["cyclic"] = v.cyclic;
            r["criteria"] = {{"krylov", v.krylov},
                             {"minimal_polynomial", v.minimal_poly},
                             {"jordan_eigenspaces", v.jordan_eigenspaces},
                             {"centralizer_dimension", v.centralizer_dim},
                             {"rank_sigma_prime", v.rank_sigma_prime},
                             {"kernel_sigma_prime_is_image_ad", v.ker_equals_image_ad}};
            r["diagnostics"] = {{"krylov_dim", v.krylov_dim},
                                {"minimal_poly_degree", v.minimal_poly_degree},
                                {"centralizer_dimension", v.centralizer_dimension},
                                {"sigma_prime_rank", v.sigma_prime_rank},
                                {"max_eigenspace_dim", v.max_eigenspace_dim}};
            return envelope("cyclicity", "cyclic matrix: minimal polynomial equals characteristic polynomial", r);
        };
        c.tests = [](SelfTest& t) {
            Matrix I = Matrix::Identity(3, 3);
            const auto v = cyclicity_criteria(I);
            t.check("identity is not cyclic", v.consensus && !v.cyclic);
            Matrix D = Matrix::Zero(2, 2);
            D(0, 0) = 1.0;
            D(1, 1) = 2.0;
            const auto w = cyclicity_criteria(D);
            t.check("diag(1, 2) is cyclic", w.consensus && w.cyclic);
            Matrix J = Matrix::Zero(3, 3);
            J(0, 1) = 1.0;
            J(1, 2) = 1.0;
            const auto u = cyclicity_criteria(J);
            t.check("nilpotent Jordan block is cyclic", u.consensus && u.cyclic);
        };
    }

    // sigma-prime
    std::string s_A, s_B;
    {
        auto& c = add("sigma-prime", "derivative of sigma at A in the direction B");
        c.app->add_option("--A", s_A, "matrix A");
        c.app->add_option("--B", s_B, "direction B (optional)");
        c.run = [&](const RunConfig& rc) {
            const Matrix A = parse_matrix(need(s_A, "--A"));
            const Matrix S = sigma_prime_matrix(A);
            const auto n = A.rows();
            json r;
            r["n"] = n;
            r["rank"] = numerical_rank(S, rc.tol.at("rank"));
            r["kernel_dim"] = nullity(S, rc.tol.at("rank"));
            r["cyclic_kernel_dim"] = n * n - n;
            if (!s_B.empty()) {
                const Matrix B = parse_matrix(s_B);
                if (B.rows() != n) throw Error(ErrorKind::InvalidArgument, "A and B must have the same size");
                r["sigma_prime"] = point_json(sigma_prime(A, B));
            }
            return envelope("sigma-prime", "sigma'_A(B) = d/dzeta sigma(A + zeta B) at 0", r);
        };
        c.tests = [](SelfTest& t) {
            Matrix A = Matrix::Zero(2, 2);
            A(0, 0) = 0.1;
            A(1, 1) = 0.2;
            const Matrix B = Matrix::Identity(2, 2);
            const auto d = sigma_prime(A, B);
            t.check("trace direction", std::abs(d[0] - 2.0) < 1e-10);
            t.check("determinant direction", std::abs(d[1] - 0.3) < 1e-10);
            t.check("kernel dimension n^2 - n", nullity(sigma_prime_matrix(A)) == 2);
        };
    }

    // mobius
    std::string mb_lambda, mb_matrix;
    {
        auto& c = add("mobius", "Moebius map Phi_lambda on the spectral ball");
        c.app->add_option("--lambda", mb_lambda, "lambda in D");
        c.app->add_option("--matrix", mb_matrix, "A in the spectral ball");
        c.run = [&](const RunConfig&) {
            const Complex l = parse_complex(need(mb_lambda, "--lambda"));
            const Matrix A = parse_matrix(need(mb_matrix, "--matrix"));
            if (!(std::abs(l) < 1.0)) throw Error(ErrorKind::DomainError, "|lambda| must be < 1");
            if (!in_omega(A)) throw Error(ErrorKind::DomainError, "A must lie in the spectral ball");
            const Matrix P = mobius_phi(l, A);
            double md = 0.0;
            for (const auto& a : spectral_data(A).eigenvalues) md = std::max(md, mobius_distance(l, a));
            json r;
            r["phi"] = matrix_json(P);
            r["spectral_radius"] = num(spectral_radius(P));
            r["max_mobius_distance"] = num(md);
            r["inverse_error"] = num(norm2(mobius_phi(-l, P) - A));
            return envelope("mobius", "r(Phi_lambda(A)) = max over spectrum of m_D(lambda, a)", r);
        };
        c.tests = [](SelfTest& t) {
            Matrix A = Matrix::Zero(2, 2);
            A(0, 0) = 0.3;
            A(0, 1) = 0.5;
            A(1, 1) = Complex{-0.2, 0.4};
            t.check("Phi_0 is the identity", norm2(mobius_phi(0.0, A) - A) < 1e-14);
            const Complex l{0.1, -0.3};
            const double md = std::max(mobius_distance(l, 0.3), mobius_distance(l, Complex{-0.2, 0.4}));
            t.check("spectral radius law", std::abs(spectral_radius(mobius_phi(l, A)) - md) < 1e-9);
            t.check("Phi_-lambda inverts Phi_lambda", norm2(mobius_phi(-l, mobius_phi(l, A)) - A) < 1e-8);
        };
    }

    // bounds
    int b_n = 3;
    bool b_certify = false;
    {
        auto& c = add("bounds", "metric bounds at the origin of G_n");
        c.app->add_option("--n", b_n, "dimension (odd n >= 3 for the e_2 bounds)");
        c.app->add_flag("--certify", b_certify, "n = 3: run the branch-and-bound certificate and report C_1");
        c.run = [&](const RunConfig& rc) {
            if (b_n < 2 || b_n > 8) throw Error(ErrorKind::InvalidArgument, "--n must be in 2..8");
            TorusSearchOptions to;
            to.seed = rc.seed;
            json r;
            r["n"] = b_n;
            json kob = json::array();
            for (int k = 1; k <= b_n; ++k) {
                ComplexPoint e(static_cast<std::size_t>(b_n));
                e[static_cast<std::size_t>(k - 1)] = 1.0;
                json row{{"k", k}, {"rho", num(rho_n(e).value)}};
                if (b_n % k == 0) row["kobayashi_upper"] = num(kobayashi_ek_upper(b_n, k));
                kob.push_back(row);
            }
            r["e_k"] = kob;
            if (b_n % 2 == 1) {
                const auto tm = max_gn_torus(b_n, to);
                const auto lo = gamma_e2_lower_witness(b_n, {1e-3, 2e-3, 5e-3, 1e-2, 2e-2}, to);
                const auto up3 = gamma_e2_upper_witness(b_n);
                const auto upt = gamma_e2_upper_witness_torus(b_n);
                r["M_n"] = num(tm.value);
                r["M_n_closed"] = num(M_n(b_n));
                r["gamma_e2"] = {{"lower_closed", num(gamma_e2_lower_closed(b_n))},
                                 {"lower_witness", num(lo.value)},
                                 {"lower_witness_eps", num(lo.eps)},
                                 {"upper_three_point", num(up3.value)},
                                 {"upper_torus", num(upt.value)},
                                 {"upper_torus_c", num(upt.c_opt.real())},
                                 {"upper_closed", num(gamma_e2_upper_closed(b_n))}};
            }
            if (b_n == 3) {
                const auto c0 = gamma3_e2_upper();
                r["C0"] = num(c0.C0);
                r["C0_argmin"] = num(c0.argmin);
                if (b_certify) {
                    BBOptions bo;
                    if (rc.eval_budget) bo.budget = rc.eval_budget;
                    const auto bb = certified_max_bb(checked_appendixC_lipschitz(), 1.0, bo);
                    std::optional<CertifiedMaximum> cert;
                    if (bb.outcome == BBOutcome::Certified) cert = bb.max;
                    r["C1"] = num(caratheodory_gamma2_G3_lower(cert).value);
                }
            }
            return envelope("bounds", "gamma_{G_n}(0; e_2) and kappa_{G_n}(0; e_k) estimates", r);
        };
        c.tests = [](SelfTest& t) {
            t.check("M_3 = 5/4", close(max_gn_torus(3).value, 1.25, 1e-9));
            t.check("rho_3(e_2) = 2/3", close(rho_n(ComplexPoint{0.0, 1.0, 0.0}).value, 2.0 / 3.0, 1e-10));
            t.check("Lipschitz constant re-derives", checked_appendixC_lipschitz() == kAppendixCLipschitz);
            t.check("kappa(0; e_2) <= 2/4 for n = 4", close(kobayashi_ek_upper(4, 2), 0.5, 1e-15));
        };
    }

    // appendixc
    std::string a_steps = "1e-3";
    {
        auto& c = add("appendixc", "flat grid search of max |g| on the torus");
        c.app->add_option("--step", a_steps, "comma-separated grid steps");
        c.custom = [&](const RunConfig& rc) {
            std::vector<double> steps;
            for (const auto& z : parse_complex_list(a_steps)) {
                if (z.imag() != 0.0) throw Error(ErrorKind::InvalidArgument, "--step must be real");
                steps.push_back(z.real());
            }
            GridOptions go;
            go.workers = rc.workers;
            if (rc.eval_budget) go.budget = rc.eval_budget;
            std::vector<CertifiedMaximum> rows;
            for (double s : steps) rows.push_back(grid_search_appendixC(s, go));
            if (rc.format == "csv") {
                std::printf("step,g-max,tita-1,tita-2,upper_bound,certified\n");
                for (const auto& r : rows)
                    std::printf("%.15f,%.15f,%.10f,%.10f,%.15f,%s\n", r.step, r.grid_max, r.theta1, r.theta2, r.global_upper_bound,
                                r.certified_below ? "true" : "false");
                return kExitOk;
            }
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"step", num(r.step)},
                               {"g_max", num(r.grid_max)},
                               {"theta1", num(r.theta1)},
                               {"theta2", num(r.theta2)},
                               {"lipschitz", num(r.lipschitz)},
                               {"upper_bound", num(r.global_upper_bound)},
                               {"certified_below", r.certified_below ? num(*r.certified_below) : json(nullptr)},
                               {"evaluations", r.evaluations}});
            emit(envelope("appendixc", "g = 0.675 g2^2 - 0.291 g2 g1^2 + 0.033 g1^4, grid max + 44.28 step/2", json{{"rows", arr}}), rc);
            return kExitOk;
        };
        c.tests = [](SelfTest& t) {
            t.check("|g(pi, pi)| = 0.999", close(std::abs(appendixC_g(kPi, kPi)), 0.999, 1e-12));
            t.check("|g(0, 0)| = 0.891", close(std::abs(appendixC_g(0.0, 0.0)), 0.891, 1e-12));
            const auto r = grid_search_appendixC(1e-2, {1, 1'000'000, 1.0});
            t.check("coarse grid max <= 0.999", r.grid_max <= 0.999 + 1e-12);
        };
    }

    // certify
    std::string cf_objective = "appendixc", cf_ledger = "appendixc_ledger.txt";
    double cf_target = 1.0;
    {
        auto& c = add("certify", "branch-and-bound certificate for max |g| < target");
        c.app->add_option("--objective", cf_objective, "objective")->check(CLI::IsMember({"appendixc"}));
        c.app->add_option("--target", cf_target, "target value");
        c.app->add_option("--ledger", cf_ledger, "where to write the box ledger");
        c.run = [&](const RunConfig& rc) {
            BBOptions bo;
            if (rc.eval_budget) bo.budget = rc.eval_budget;
            const double L = checked_appendixC_lipschitz();
            const auto bb = certified_max_bb(L, cf_target, bo);
            json r;
            r["objective"] = cf_objective;
            r["target"] = num(cf_target);
            r["lipschitz"] = num(L);
            r["evaluations"] = bb.max.evaluations;
            if (bb.outcome == BBOutcome::Disproved) {
                r["certified"] = false;
                r["witness"] = {{"theta1", num(bb.witness1)}, {"theta2", num(bb.witness2)}, {"value", num(bb.witness_value)}};
                return envelope("certify", "max |g| >= target at an explicit point", r);
            }
            const auto chk = verify_ledger(bb.ledger, L, cf_target);
            std::ofstream out(cf_ledger);
            if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write ledger file " + cf_ledger);
            out << "# symdisc box ledger\n# objective " << cf_objective << "\n# lipschitz " << format_real(L) << "\n# target "
                << format_real(cf_target) << "\n# nodes " << bb.ledger.nodes << "\n# leaves " << bb.ledger.leaves
                << "\n# encoding: preorder split bits, least significant bit first, hex bytes\n";
            static const char* hex = "0123456789abcdef";
            for (std::size_t k = 0; k < bb.ledger.bits.size(); ++k) {
                out << hex[bb.ledger.bits[k] >> 4] << hex[bb.ledger.bits[k] & 15];
                if (k % 64 == 63) out << '\n';
            }
            out << '\n';
            r["certified"] = chk.ok;
            r["best_value"] = num(bb.max.grid_max);
            r["argmax"] = {num(bb.max.theta1), num(bb.max.theta2)};
            r["global_upper_bound"] = num(bb.max.global_upper_bound);
            r["smallest_box"] = num(bb.max.step);
            r["ledger"] = {{"path", cf_ledger}, {"nodes", bb.ledger.nodes}, {"leaves", bb.ledger.leaves}, {"verified", chk.ok}};
            return envelope("certify", "|g(theta)| <= |g(c)| + 44.28 d(theta, c) on every box", r);
        };
        c.tests = [](SelfTest& t) {
            const auto bb = certified_max_bb(kAppendixCLipschitz, 2.0);
            t.check("target 2 certifies", bb.outcome == BBOutcome::Certified);
            t.check("ledger verifies", verify_ledger(bb.ledger, kAppendixCLipschitz, 2.0).ok);
            const auto d = certified_max_bb(kAppendixCLipschitz, 0.99);
            t.check("target 0.99 is disproved", d.outcome == BBOutcome::Disproved && d.witness_value >= 0.99);
            bool refused = false;
            try {
                caratheodory_gamma2_G3_lower(std::nullopt);
            } catch (const Error& e) {
                refused = e.kind() == ErrorKind::CertificateMissing;
            }
            t.check("C_1 needs a certificate", refused);
        };
    }

    // pick
    std::string p_nodes, p_targets, p_beta, p_deltas, p_nus;
    {
        auto& c = add("pick", "Nevanlinna-Pick solvability");
        c.app->add_option("--nodes", p_nodes, "interpolation nodes in D");
        c.app->add_option("--targets", p_targets, "targets in D");
        c.app->add_option("--beta", p_beta, "beta in D (circle variant)");
        c.app->add_option("--deltas", p_deltas, "distinct points on the circle (circle variant)");
        c.app->add_option("--nus", p_nus, "targets in D (circle variant)");
        c.run = [&](const RunConfig& rc) {
            Matrix M;
            std::string variant;
            if (!p_beta.empty()) {
                variant = "circle";
                M = pick_matrix_circle(parse_complex(p_beta), parse_complex_list(need(p_deltas, "--deltas")), parse_complex_list(need(p_nus, "--nus")));
            } else {
                variant = "classical";
                M = pick_matrix({parse_complex_list(need(p_nodes, "--nodes")), parse_complex_list(need(p_targets, "--targets"))});
            }
            const Matrix H = 0.5 * (M + M.adjoint());
            Eigen::SelfAdjointEigenSolver<Matrix> es(H);
            json r;
            r["variant"] = variant;
            r["size"] = M.rows();
            r["solvable"] = is_psd(M, rc.tol.at("psd"));
            r["min_eigenvalue"] = num(es.eigenvalues().minCoeff());
            r["trace"] = num(H.trace().real());
            return envelope("pick", "solvable iff [(1 - w_j conj w_k) / (1 - z_j conj z_k)] is positive semidefinite", r);
        };
        c.tests = [](SelfTest& t) {
            t.check("one node is solvable", np_solvable({{Complex{0.3, 0.2}}, {Complex{-0.7, 0.1}}}));
            t.check("identity data is solvable", np_solvable({{0.1, 0.5}, {0.1, 0.5}}));
            t.check("expanding data is not", !np_solvable({{0.0, 0.1}, {0.0, 0.9}}));
        };
    }

    // nonconvex-witness
    int nc_n = 3;
    {
        auto& c = add("nonconvex-witness", "two boundary points of a slice of G_n whose midpoint is outside");
        c.app->add_option("--n", nc_n, "3 or 4");
        c.run = [&](const RunConfig&) {
            const auto w = nonconvex_witness(nc_n);
            json r;
            r["n"] = nc_n;
            r["p1"] = cnum(w.p1);
            r["q1"] = cnum(w.q1);
            r["p2"] = cnum(w.p2);
            r["q2"] = cnum(w.q2);
            r["p0"] = cnum(w.p0);
            r["q0"] = cnum(w.q0);
            r["boundary_values"] = {num(w.value1), num(w.value2)};
            r["midpoint_value"] = num(w.value0);
            r["abs_sum"] = num(w.abs_sum);
            r["abs_sum_closed"] = num(w.abs_sum_closed);
            r["midpoint_h"] = num(minkowski_h(slice_point(nc_n, w.p0, w.q0)));
            return envelope("nonconvex-witness", nc_n == 3 ? "r(p, q) for zeta^3 + p zeta + q" : "s(p, q) for zeta^4 + p zeta + q", r);
        };
        c.tests = [](SelfTest& t) {
            t.check("r3(0, 0) = -1", r3(0.0, 0.0) == -1.0);
            t.check("s4(0, 0) = -1", s4(0.0, 0.0) == -1.0);
            t.check("midpoint leaves G_3", nonconvex_witness(3).value0 > 0.0);
        };
    }

    // product-property
    std::string pp_poles;
    double pp_theta = 0.0, pp_phi = 0.0;
    {
        auto& c = add("product-property", "Lempert function of D^2 with rotated two-point poles");
        c.app->add_option("--poles", pp_poles, "a_1,a_2 in the punctured disc");
        c.app->add_option("--theta", pp_theta, "rotation of the second pole set");
        c.app->add_option("--phi", pp_phi, "phase of the extremal disc");
        c.run = [&](const RunConfig&) {
            const auto a = parse_complex_list(need(pp_poles, "--poles"));
            if (a.size() != 2) throw Error(ErrorKind::InvalidArgument, "--poles needs exactly two points");
            const auto rec = product_property_check(a[0], a[1], pp_theta, pp_phi);
            json r;
            r["lhs_upper"] = num(rec.lhs_upper);
            r["rhs"] = num(rec.rhs);
            r["interpolation_error"] = num(rec.interpolation_error);
            r["equal"] = rec.equal;
            return envelope("product-property", "l_{D^2}(A x e^{i theta} A, (0, 0)) = l_D(A, 0) = prod m_D(a, 0)", r);
        };
        c.tests = [](SelfTest& t) {
            const auto rec = product_property_check(0.5, -0.5, 0.0);
            t.check("A = {0.5, -0.5}: both sides 0.25", rec.equal && close(rec.rhs, 0.25, 1e-15));
            t.check("l_D({0.3, -0.4}, 0) = 0.12", close(l_disc_poles({0.3, -0.4}, 0.0), 0.12, 1e-15));
            t.check("z at a pole gives 0", l_disc_poles({0.3}, 0.3) == 0.0);
        };
    }

    try {
        app.parse(argc, argv);
        for (const auto& t : tol_overrides) {
            const auto eq = t.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--tol expects name=value");
            const std::string name = t.substr(0, eq);
            if (!cfg.tol.count(name)) throw Error(ErrorKind::InvalidArgument, "unknown tolerance '" + name + "'");
            const double v = parse_complex(t.substr(eq + 1)).real();
            if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
            cfg.tol[name] = v;
        }
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "symdisc: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "symdisc: " << e.what() << "\n";
        return kExitUsage;
    }

    for (const auto& cp : commands) {
        auto& c = *cp;
        if (!c.app->parsed()) continue;
        try {
            if (c.selftest) {
                SelfTest t;
                c.tests(t);
                std::cout << t.report(c.name).dump(2) << "\n";
                return t.passed() ? kExitOk : kExitDomain;
            }
            if (c.custom) return c.custom(cfg);
            emit(c.run(cfg), cfg);
            return kExitOk;
        } catch (const CLI::RequiredError& e) {
            std::cerr << "symdisc " << c.name << ": missing " << e.what() << "\n";
            return kExitUsage;
        } catch (const Error& e) {
            std::cerr << "symdisc " << c.name << ": " << e.what() << "\n";
            switch (e.kind()) {
                case ErrorKind::InvalidArgument: return kExitUsage;
                case ErrorKind::Inconclusive: return kExitInconclusive;
                default: return kExitDomain;
            }
        }
    }
    return kExitUsage;
}
