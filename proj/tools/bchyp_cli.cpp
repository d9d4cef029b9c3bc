// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface for the BC hypergroup toolkit.  Emits machine-readable
// JSON ({config, results, version}) or CSV; exit codes: 0 ok, 2 domain error,
// 3 accuracy/capacity error, 4 failed verification check.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bchyp/errors.hpp"
#include "bchyp/hypergroup.hpp"
#include "bchyp/hypfun.hpp"
#include "bchyp/measures.hpp"
#include "bchyp/rootdata.hpp"
#include "bchyp/transform.hpp"

namespace {

using bchyp::cplx;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct Common {
    std::string field = "R";
    int rank = 1;
    double mu = 0;
    int p = 0;
    std::uint64_t seed = 0;
    std::int64_t samples = 1000000;
    int quad_order = 64;
    bool mc = false;
    double tol = 0; // 0 = per-command default
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--field", c.field, "Base field: R, C or H")
        ->check(CLI::IsMember({"R", "C", "H"}));
    cmd->add_option("--rank", c.rank, "Rank q of the chamber");
    cmd->add_option("--mu", c.mu, "Density exponent mu");
    cmd->add_option("--p", c.p, "Group case: sets mu = p*d/2");
    cmd->add_option("--seed", c.seed, "Random seed");
    cmd->add_option("--samples", c.samples, "Monte Carlo sample count");
    cmd->add_option("--quad-order", c.quad_order, "Tensor quadrature order");
    cmd->add_flag("--mc", c.mc, "Use Monte Carlo instead of tensor quadrature");
    cmd->add_option("--tol", c.tol, "Tolerance override");
    cmd->add_option("--out", c.out, "Output path (default stdout)");
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

bchyp::BCParams make_params(const Common& c) {
    bchyp::Field f = bchyp::field_from_name(c.field);
    if (c.p > 0) return bchyp::derive_params_from_p(f, c.rank, c.p);
    return bchyp::derive_params(f, c.rank, c.mu);
}

bchyp::QuadratureSpec make_quad(const Common& c) {
    bchyp::QuadratureSpec q = c.mc ? bchyp::QuadratureSpec::monte_carlo(c.samples, c.seed)
                                   : bchyp::QuadratureSpec::tensor(c.quad_order);
    q.seed = c.seed;
    return q;
}

double tol_or(const Common& c, double dflt) { return c.tol > 0 ? c.tol : dflt; }

// ---- argument grammars ----

cplx parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw bchyp::DomainError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') return {std::stod(s), 0.0};
    s.pop_back();
    // split at the last +/- that is not a leading sign or an exponent sign
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto unit = [](const std::string& u) {
        if (u.empty() || u == "+") return 1.0;
        if (u == "-") return -1.0;
        return std::stod(u);
    };
    if (split == std::string::npos) return {0.0, unit(s)};
    return {std::stod(s.substr(0, split)), unit(s.substr(split))};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) parts.push_back(item);
    return parts;
}

// Coordinates of one spectral parameter: `a+bi` entries separated by ';'
// (or ',' as a convenience at rank >= 2).
bchyp::SpectralParam parse_lambda(const std::string& s, int rank) {
    std::string norm = s;
    std::replace(norm.begin(), norm.end(), ';', ',');
    std::vector<std::string> parts = split(norm, ',');
    if (static_cast<int>(parts.size()) != rank)
        throw bchyp::DomainError("lambda has " + std::to_string(parts.size()) +
                                 " coordinate(s), expected " + std::to_string(rank));
    std::vector<cplx> lam;
    for (const auto& p : parts) lam.push_back(parse_complex(p));
    return bchyp::SpectralParam(std::move(lam));
}

// Rank 1: commas and semicolons both separate points.  Rank >= 2: commas
// separate coordinates, semicolons separate points.
std::vector<bchyp::ChamberPoint> parse_points(const std::string& s, int rank) {
    std::vector<bchyp::ChamberPoint> pts;
    if (rank == 1) {
        std::string norm = s;
        std::replace(norm.begin(), norm.end(), ';', ',');
        for (const auto& p : split(norm, ','))
            pts.emplace_back(std::vector<double>{std::stod(p)});
        return pts;
    }
    for (const auto& chunk : split(s, ';')) {
        std::vector<double> coords;
        for (const auto& p : split(chunk, ',')) coords.push_back(std::stod(p));
        if (static_cast<int>(coords.size()) != rank)
            throw bchyp::DomainError("point has " + std::to_string(coords.size()) +
                                     " coordinate(s), expected " + std::to_string(rank));
        pts.emplace_back(coords);
    }
    return pts;
}

bchyp::ChamberPoint parse_point(const std::string& s, int rank) {
    auto pts = parse_points(s, rank);
    if (pts.size() != 1) throw bchyp::DomainError("expected exactly one point");
    return pts[0];
}

std::vector<int> parse_weight(const std::string& s) {
    std::vector<int> nu;
    for (const auto& p : split(s, ',')) nu.push_back(std::stoi(p));
    return nu;
}

// Built-in profile family; center/width rescale radially (rank 1).
bchyp::ChamberProfile make_profile(const std::string& name, double center, double width) {
    bchyp::ChamberProfile base = bchyp::chamber_profile(name);
    if (center == 0.0 && width == 1.0) return base;
    if (width <= 0) throw bchyp::DomainError("profile width must be positive");
    auto fn = base.fn;
    bchyp::ChamberProfile scaled;
    scaled.name = base.name;
    scaled.support = center + width * base.support;
    scaled.fn = [fn, center, width](const bchyp::ChamberPoint& t) {
        double u = std::abs(t.euclid_norm() - center) / width;
        return fn(bchyp::ChamberPoint({u}));
    };
    return scaled;
}

// ---- output plumbing ----

json value_json(cplx v) {
    if (v.imag() == 0.0) return v.real();
    return json::array({v.real(), v.imag()});
}

void add_result(json& results, const std::string& name, cplx value, double error,
                bool pass, const std::string& route = "") {
    json r;
    r["name"] = name;
    r["value"] = value_json(value);
    r["error"] = error;
    r["pass"] = pass;
    if (!route.empty()) r["route"] = route;
    results.push_back(r);
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

int emit(const Common& c, const json& config, const json& results) {
    std::ostringstream body;
    if (c.format == "csv") {
        body << "name,value_re,value_im,error,pass\n";
        for (const auto& r : results) {
            cplx v;
            if (r["value"].is_array())
                v = {r["value"][0].get<double>(), r["value"][1].get<double>()};
            else
                v = {r["value"].get<double>(), 0.0};
            body << r["name"].get<std::string>() << ',' << fmt_double(v.real()) << ','
                 << fmt_double(v.imag()) << ',' << fmt_double(r["error"].get<double>())
                 << ',' << (r["pass"].get<bool>() ? 1 : 0) << '\n';
        }
    } else {
        json doc;
        doc["config"] = config;
        doc["results"] = results;
        doc["version"] = kVersion;
        body << doc.dump(2) << '\n';
    }
    if (c.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(c.out);
        if (!f) throw bchyp::DomainError("cannot open output path '" + c.out + "'");
        f << body.str();
    }
    for (const auto& r : results)
        if (!r["pass"].get<bool>()) return 4;
    return 0;
}

json base_config(const Common& c, const std::string& command) {
    json cfg;
    cfg["command"] = command;
    cfg["field"] = c.field;
    cfg["rank"] = c.rank;
    cfg["mu"] = c.mu;
    if (c.p > 0) cfg["p"] = c.p;
    cfg["seed"] = c.seed;
    cfg["quad_mode"] = c.mc ? "mc" : "tensor";
    cfg["quad_order"] = c.quad_order;
    cfg["samples"] = c.samples;
    cfg["tol"] = c.tol;
    cfg["format"] = c.format;
    return cfg;
}

const char* route_name(bchyp::EvalPath p) {
    switch (p) {
    case bchyp::EvalPath::Rank1_2F1: return "rank1-2f1";
    case bchyp::EvalPath::JacobiPoly: return "jacobi-poly";
    case bchyp::EvalPath::HcLeading: return "hc-leading";
    }
    return "?";
}

// ---- subcommands ----

int run_eval(const Common& c, const std::string& lambda_s, const std::string& weight_s,
             const std::string& t_s) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "eval");
    cfg["lambda"] = lambda_s;
    if (!weight_s.empty()) cfg["weight"] = weight_s;
    cfg["t"] = t_s;
    json results = json::array();

    std::vector<std::vector<cplx>> lambdas; // F-convention arguments
    std::vector<std::string> labels;
    if (!weight_s.empty()) {
        std::vector<int> nu = parse_weight(weight_s);
        if (static_cast<int>(nu.size()) != params.q)
            throw bchyp::DomainError("weight rank mismatch");
        std::vector<double> rho = params.rho();
        std::vector<cplx> lam(params.q);
        for (int i = 0; i < params.q; ++i) lam[i] = cplx(2.0 * nu[i] + rho[i], 0.0);
        lambdas.push_back(lam);
        labels.push_back("nu=" + weight_s);
    } else {
        if (c.rank == 1) {
            std::string norm = lambda_s;
            std::replace(norm.begin(), norm.end(), ';', ',');
            for (const auto& p : split(norm, ',')) {
                cplx l = parse_complex(p);
                lambdas.push_back({l * cplx(0, 1)});
                labels.push_back(p);
            }
        } else {
            bchyp::SpectralParam sp = parse_lambda(lambda_s, c.rank);
            lambdas.push_back(sp.times_i().lam);
            labels.push_back(lambda_s);
        }
    }
    for (const auto& t : parse_points(t_s, c.rank)) {
        std::ostringstream tn;
        tn << "t=";
        for (int i = 0; i < t.rank(); ++i) tn << (i ? "," : "") << t.t[i];
        for (size_t li = 0; li < lambdas.size(); ++li) {
            bchyp::HypergeomValue v = bchyp::hypergeom_eval(lambdas[li], params, t);
            add_result(results, "phi(" + labels[li] + "; " + tn.str() + ")", v.value, 0.0,
                       true, route_name(v.path));
        }
    }
    return emit(c, cfg, results);
}

int run_cfunc(const Common& c, const std::string& lambda_s) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "c-func");
    cfg["lambda"] = lambda_s;
    json results = json::array();
    bchyp::SpectralParam sp = parse_lambda(lambda_s, c.rank);
    bchyp::CFunctionValue v = bchyp::c_function(sp.lam, params);
    add_result(results, "c(" + lambda_s + ")", v.value, 0.0, true,
               v.finite ? "finite" : "pole");
    return emit(c, cfg, results);
}

int run_convolve(const Common& c, const std::string& t_s, const std::string& s_s,
                 const std::string& profile) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "convolve");
    cfg["t"] = t_s;
    cfg["s"] = s_s;
    cfg["profile"] = profile;
    json results = json::array();
    bchyp::ChamberProfile f = bchyp::chamber_profile(profile);
    bchyp::ConvolutionEstimate e = bchyp::convolve_point(
        parse_point(t_s, c.rank), parse_point(s_s, c.rank), f.fn, params, make_quad(c));
    add_result(results, "conv(" + t_s + "; " + s_s + "; " + profile + ")", e.value,
               e.error, true);
    return emit(c, cfg, results);
}

int run_translate(const Common& c, const std::string& t_s, const std::string& s_s,
                  const std::string& profile) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "translate");
    cfg["t"] = t_s;
    cfg["s"] = s_s;
    cfg["profile"] = profile;
    json results = json::array();
    bchyp::ChamberProfile f = bchyp::chamber_profile(profile);
    bchyp::ChamberFn tf = bchyp::translate(f.fn, parse_point(s_s, c.rank), params,
                                           make_quad(c));
    for (const auto& t : parse_points(t_s, c.rank)) {
        std::ostringstream tn;
        for (int i = 0; i < t.rank(); ++i) tn << (i ? "," : "") << t.t[i];
        add_result(results, "translate(" + tn.str() + ")", tf(t), 0.0, true);
    }
    return emit(c, cfg, results);
}

bchyp::TransformTable read_table_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw bchyp::DomainError("cannot open table '" + path + "'");
    bchyp::TransformTable table;
    std::string line;
    std::getline(f, line); // header
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto parts = split(line, ',');
        if (parts.size() != 3) throw bchyp::DomainError("malformed table row: " + line);
        table.lambda_im.push_back(std::stod(parts[0]));
        table.values.emplace_back(std::stod(parts[1]), std::stod(parts[2]));
    }
    if (table.lambda_im.size() < 2)
        throw bchyp::DomainError("transform table is empty or too short");
    table.step = table.lambda_im[1] - table.lambda_im[0];
    return table;
}

int run_transform(const Common& c, const std::string& action, const std::string& profile,
                  double center, double width, const std::string& in_path,
                  const std::string& t_s) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "transform");
    cfg["action"] = action;
    cfg["profile"] = profile;
    cfg["center"] = center;
    cfg["width"] = width;
    if (!in_path.empty()) cfg["in"] = in_path;

    if (action == "forward") {
        bchyp::ChamberProfile f = make_profile(profile, center, width);
        bchyp::TransformTable table = bchyp::forward_transform(f.fn, f.support, params);
        if (c.format == "csv") {
            if (c.out.empty()) {
                table.write_csv(std::cout);
            } else {
                std::ofstream os(c.out);
                if (!os) throw bchyp::DomainError("cannot open output path '" + c.out + "'");
                table.write_csv(os);
            }
            return 0;
        }
        json doc;
        doc["config"] = cfg;
        json tj;
        tj["support"] = table.support;
        tj["step"] = table.step;
        tj["lambda_im"] = table.lambda_im;
        std::vector<double> re, im;
        for (cplx v : table.values) {
            re.push_back(v.real());
            im.push_back(v.imag());
        }
        tj["re"] = re;
        tj["im"] = im;
        doc["table"] = tj;
        doc["version"] = kVersion;
        if (c.out.empty()) {
            std::cout << doc.dump(2) << '\n';
        } else {
            std::ofstream os(c.out);
            if (!os) throw bchyp::DomainError("cannot open output path '" + c.out + "'");
            os << doc.dump(2) << '\n';
        }
        return 0;
    }
    if (action == "inverse") {
        if (in_path.empty()) throw bchyp::DomainError("inverse requires --in <table.csv>");
        bchyp::TransformTable table = read_table_csv(in_path);
        json results = json::array();
        for (const auto& t : parse_points(t_s.empty() ? "0" : t_s, 1))
            add_result(results, "inverse(t=" + fmt_double(t.t[0]) + ")",
                       bchyp::inverse_at(table, params, t.t[0]), 0.0, true);
        return emit(c, cfg, results);
    }
    if (action == "roundtrip") {
        bchyp::ChamberProfile f = make_profile(profile, center, width);
        std::vector<double> radii;
        for (double frac : {0.1, 0.25, 0.4, 0.55, 0.7, 0.85})
            radii.push_back(frac * f.support);
        bchyp::RoundTripReport rt = bchyp::round_trip_check(f.fn, f.support, params, radii);
        bchyp::TransformTable table = bchyp::forward_transform(f.fn, f.support, params);
        double lhs = bchyp::parseval_lhs(f.fn, f.support, params);
        double rhs = bchyp::parseval_rhs(table, params);
        double tol = tol_or(c, 1e-3);
        json results = json::array();
        double rel = rt.max_abs_resid / std::max(1e-300, rt.max_value);
        add_result(results, "roundtrip_max_rel", rel, 0.0, rel <= tol);
        double prel = std::abs(lhs - rhs) / std::max(1e-300, lhs);
        add_result(results, "parseval_rel", prel, 0.0, prel <= tol);
        return emit(c, cfg, results);
    }
    throw bchyp::DomainError("unknown transform action '" + action + "'");
}

int run_sample(const Common& c) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "sample");
    bchyp::Rng rng(c.seed, 0);
    double wsum = 0, wmax = 0;
    std::ostringstream rows;
    rows << std::setprecision(17);
    for (std::int64_t i = 0; i < c.samples; ++i) {
        bchyp::BallSample b = bchyp::ball_sample(params, rng);
        wsum += b.weight;
        wmax = std::max(wmax, b.weight);
        for (int k = 0; k < params.q; ++k) rows << b.sigma[k] << ',';
        rows << b.weight << '\n';
    }
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        if (!f) throw bchyp::DomainError("cannot open output path '" + c.out + "'");
        f << "sigma,weight header: sigma_1..sigma_q,weight\n" << rows.str();
    }
    json results = json::array();
    add_result(results, "mean_weight", wsum / c.samples, 0.0, true);
    add_result(results, "max_weight", wmax, 0.0, true);
    return emit(c, cfg, results);
}

int run_kappa(const Common& c) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "kappa");
    json results = json::array();
    double err = 0;
    double k = bchyp::kappa(params, make_quad(c), &err);
    add_result(results, "kappa", k, err, true);
    const int d = bchyp::field_dim(params.field);
    if (params.q == 1 && (d == 1 || d == 2)) {
        double ref = d == 1 ? std::sqrt(M_PI) * std::tgamma(params.mu - 0.5) /
                                  std::tgamma(params.mu)
                            : M_PI / (params.mu - 1.0);
        double rel = std::abs(k - ref) / ref;
        add_result(results, "kappa_rel_err_vs_closed_form", rel, err / ref,
                   rel <= tol_or(c, c.mc ? 1e-2 : 1e-8));
    }
    return emit(c, cfg, results);
}

int run_verify(const Common& c, const std::string& suite, const std::string& lambda_s,
               const std::string& weight_s, const std::string& t_s,
               const std::string& s_s, const std::string& r_s,
               const std::string& profile, int trials) {
    bchyp::BCParams params = make_params(c);
    json cfg = base_config(c, "verify");
    cfg["suite"] = suite;
    if (!lambda_s.empty()) cfg["lambda"] = lambda_s;
    if (!weight_s.empty()) cfg["weight"] = weight_s;
    if (!t_s.empty()) cfg["t"] = t_s;
    if (!s_s.empty()) cfg["s"] = s_s;
    if (!r_s.empty()) cfg["r"] = r_s;
    cfg["profile"] = profile;
    if (trials > 0) cfg["trials"] = trials;
    json results = json::array();
    bchyp::QuadratureSpec quad = make_quad(c);

    if (suite == "product") {
        bchyp::SpectralParam lam;
        if (!weight_s.empty()) {
            std::vector<int> nu = parse_weight(weight_s);
            std::vector<double> rho = params.rho();
            std::vector<cplx> l(params.q);
            for (int i = 0; i < params.q; ++i)
                l[i] = cplx(0.0, -(2.0 * nu[i] + rho[i])); // phi convention
            lam = bchyp::SpectralParam(std::move(l));
        } else {
            lam = parse_lambda(lambda_s, c.rank);
        }
        bchyp::ProductCheck pc = bchyp::verify_product(lam, parse_point(t_s, c.rank),
                                                       parse_point(s_s, c.rank), params,
                                                       quad);
        double tol = tol_or(c, quad.mode == bchyp::QuadMode::Tensor ? 1e-6 : 1e-3);
        add_result(results, "product_residual", pc.residual, pc.error,
                   pc.residual <= std::max(tol, 3.0 * pc.error));
    } else if (suite == "axioms") {
        bchyp::ChamberProfile f = bchyp::chamber_profile(profile);
        bchyp::AxiomReport rep = bchyp::verify_axioms(
            parse_point(r_s, c.rank), parse_point(s_s, c.rank), parse_point(t_s, c.rank),
            f.fn, params, quad);
        bool tensor = quad.mode == bchyp::QuadMode::Tensor;
        add_result(results, "commutativity", rep.commutativity, rep.commutativity_budget,
                   rep.commutativity <=
                       (tensor ? tol_or(c, 1e-8)
                               : std::max(1e-3, 3.0 * rep.commutativity_budget)));
        add_result(results, "associativity", rep.associativity, rep.associativity_budget,
                   rep.associativity <= std::max(tol_or(c, 1e-3),
                                                 3.0 * rep.associativity_budget));
        add_result(results, "neutrality", rep.neutrality, 0.0,
                   rep.neutrality <= 1e-10);
        add_result(results, "support_violations",
                   static_cast<double>(rep.support_violations),
                   static_cast<double>(rep.support_samples), rep.support_violations == 0);
        add_result(results, "involution_min", rep.involution_min, 0.0,
                   rep.involution_min <= 1e-3);
    } else if (suite == "haar") {
        bchyp::ChamberProfile f = bchyp::chamber_profile(profile);
        bchyp::HaarReport rep =
            bchyp::verify_haar(f.fn, f.support, parse_point(s_s, c.rank), params, quad);
        double tol = tol_or(c, params.q == 1 ? 1e-3 : 1e-2);
        add_result(results, "haar_rel_diff", rep.rel_diff, rep.budget,
                   rep.rel_diff <= std::max(tol, 3.0 * rep.budget));
    } else if (suite == "fjk") {
        bchyp::FjkReport rep =
            bchyp::verify_fjk_rank1(parse_lambda(lambda_s, 1), parse_point(t_s, 1),
                                    parse_point(s_s, 1), params);
        bool mc = bchyp::field_dim(params.field) == 4;
        add_result(results, "fjk_residual", rep.residual, rep.error,
                   rep.residual <= (mc ? 3.0 * rep.error : tol_or(c, 1e-8)));
    } else if (suite == "group-case") {
        bchyp::ChamberProfile f = bchyp::chamber_profile(profile);
        bchyp::GroupOracleReport rep = bchyp::group_case_oracle(
            c.p, parse_point(t_s, c.rank), parse_point(s_s, c.rank), f.fn, params, quad);
        add_result(results, "group_case_diff", rep.diff, rep.combined_se,
                   rep.diff <= 3.0 * rep.combined_se);
    } else if (suite == "dual") {
        bchyp::Rng rng(c.seed, 0);
        const std::vector<double> rho = params.rho();
        int agree = 0, done = 0;
        while (done < trials) {
            std::vector<cplx> lam(params.q);
            std::vector<double> im(params.q);
            for (int i = 0; i < params.q; ++i) {
                im[i] = rng.uniform(-1.5 * rho[0], 1.5 * rho[0]);
                lam[i] = cplx(rng.uniform(-2.0, 2.0), im[i]);
            }
            if (std::abs(bchyp::co_hull_slack(im, rho)) < 1e-9) continue;
            ++done;
            bool fast = bchyp::bounded_classify(bchyp::SpectralParam(lam), params) ==
                        bchyp::Boundedness::Bounded;
            bool brute = bchyp::co_hull_member_bruteforce(im, rho);
            if (fast == brute) ++agree;
        }
        add_result(results, "dual_agreement", static_cast<double>(agree),
                   static_cast<double>(trials), agree == trials);
    } else {
        throw bchyp::DomainError("unknown verify suite '" + suite + "'");
    }
    return emit(c, cfg, results);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BC hypergroup toolkit: evaluation, convolution, transforms, checks"};
    app.require_subcommand(1);

    Common c;
    std::string lambda_s, weight_s, t_s, s_s, r_s, profile = "gauss";
    std::string action, in_path, suite;
    double center = 0, width = 1;
    int trials = 1000;

    auto* eval = app.add_subcommand("eval", "Evaluate phi_lambda at chamber points");
    add_common(eval, c);
    eval->add_option("--lambda", lambda_s, "Spectral parameter(s), a+bi");
    eval->add_option("--weight", weight_s, "Dominant weight label (polynomial route)");
    eval->add_option("--t", t_s, "Chamber point(s)")->required();

    auto* cfunc = app.add_subcommand("c-func", "Evaluate the c-function");
    add_common(cfunc, c);
    cfunc->add_option("--lambda", lambda_s, "Argument, a+bi per coordinate")->required();

    auto* conv = app.add_subcommand("convolve", "Point-measure convolution of a profile");
    add_common(conv, c);
    conv->add_option("--t", t_s)->required();
    conv->add_option("--s", s_s)->required();
    conv->add_option("--profile", profile, "gauss|bump|shell|coscap");

    auto* trans = app.add_subcommand("translate", "Evaluate a translated profile");
    add_common(trans, c);
    trans->add_option("--t", t_s)->required();
    trans->add_option("--s", s_s)->required();
    trans->add_option("--profile", profile);

    auto* tf = app.add_subcommand("transform", "Spherical transform (rank 1)");
    add_common(tf, c);
    tf->add_option("action", action, "forward|inverse|roundtrip")->required();
    tf->add_option("--profile", profile);
    tf->add_option("--center", center, "Profile center shift");
    tf->add_option("--width", width, "Profile width scale");
    tf->add_option("--in", in_path, "Input table CSV (inverse)");
    tf->add_option("--t", t_s, "Evaluation radii (inverse)");

    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    add_common(ver, c);
    ver->add_option("suite", suite, "product|axioms|haar|fjk|group-case|dual")->required();
    ver->add_option("--lambda", lambda_s);
    ver->add_option("--weight", weight_s);
    ver->add_option("--t", t_s);
    ver->add_option("--s", s_s);
    ver->add_option("--r", r_s);
    ver->add_option("--profile", profile);
    ver->add_option("--trials", trials);

    auto* smp = app.add_subcommand("sample", "Draw matrix-ball samples");
    add_common(smp, c);

    auto* kap = app.add_subcommand("kappa", "Normalization constant of the ball density");
    add_common(kap, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return run_eval(c, lambda_s, weight_s, t_s);
        if (cfunc->parsed()) return run_cfunc(c, lambda_s);
        if (conv->parsed()) return run_convolve(c, t_s, s_s, profile);
        if (trans->parsed()) return run_translate(c, t_s, s_s, profile);
        if (tf->parsed()) return run_transform(c, action, profile, center, width, in_path, t_s);
        if (ver->parsed()) return run_verify(c, suite, lambda_s, weight_s, t_s, s_s, r_s,
                                             profile, trials);
        if (smp->parsed()) return run_sample(c);
        if (kap->parsed()) return run_kappa(c);
    } catch (const bchyp::AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << '\n';
        return 3;
    } catch (const bchyp::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 3;
    } catch (const bchyp::RouteError& e) {
        std::cerr << "route error: " << e.what() << '\n';
        return 2;
    } catch (const bchyp::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
