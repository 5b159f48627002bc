#include "reflectra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reflectra/eigen.hpp"
#include "reflectra/errors.hpp"
#include "reflectra/fourier.hpp"
#include "reflectra/heat.hpp"
#include "reflectra/intertwine.hpp"
#include "reflectra/numeric.hpp"
#include "reflectra/verify.hpp"

namespace reflectra::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) {
        cell.erase(0, cell.find_first_not_of(" \t\r"));
        cell.erase(cell.find_last_not_of(" \t\r") + 1);
        out.push_back(cell);
    }
    return out;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + s + "'");
    }
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path, std::size_t min_cols) {
    std::istringstream in(read_file(path));
    Csv csv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split(line, ',');
        if (csv.header.empty()) {
            csv.header = cells;
            if (cells.size() < min_cols)
                throw ConfigError(path + ":" + std::to_string(lineno) + ": expected at least " +
                                  std::to_string(min_cols) + " columns in header");
            continue;
        }
        if (cells.size() != csv.header.size())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(csv.header.size()) + " columns");
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_double(c, path + ":" + std::to_string(lineno)));
        csv.rows.push_back(std::move(row));
    }
    if (csv.header.empty()) throw ConfigError(path + ": empty file");
    return csv;
}

double member(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

json parse_json(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(where + ": byte " + std::to_string(e.byte) + ": malformed JSON");
    }
}

chebli::ChebliFamily family_from_block(const json& b, const fs::path& base, const std::string& where) {
    if (!b.is_object()) throw ConfigError(where + ": family block must be an object");
    if (!b.contains("kind") || !b.at("kind").is_string()) throw ConfigError(where + ": missing \"kind\"");
    const std::string kind = b.at("kind").get<std::string>();
    if (kind == "dunkl") return chebli::ChebliFamily::dunkl(member(b, "alpha", where));
    if (kind == "jacobi")
        return chebli::ChebliFamily::jacobi(member(b, "alpha", where), member(b, "beta", where));
    if (kind == "table") {
        if (!b.contains("path") || !b.at("path").is_string()) throw ConfigError(where + ": missing \"path\"");
        fs::path p = b.at("path").get<std::string>();
        if (p.is_relative()) p = base / p;
        const double alpha = b.contains("alpha") ? member(b, "alpha", where) : 0.5;
        const double rho = b.contains("rho") ? member(b, "rho", where) : -1.0;
        auto csv = read_csv(p.string(), 3);
        if (csv.header[0] != "x" || csv.header[1] != "B" || csv.header[2] != "Bprime")
            throw ConfigError(p.string() + ":1: header must be x,B,Bprime");
        std::vector<double> x, bv, bp;
        for (const auto& r : csv.rows) {
            x.push_back(r[0]);
            bv.push_back(r[1]);
            bp.push_back(r[2]);
        }
        return chebli::ChebliFamily::table(std::move(x), std::move(bv), std::move(bp), alpha, rho);
    }
    throw ConfigError(where + ".kind: unknown family kind '" + kind + "'");
}

// The config document plus the directory relative paths resolve against.
struct ConfigDoc {
    json doc;
    fs::path base;
    std::string where;
};

ConfigDoc load_doc(const std::string& spec) {
    ConfigDoc c;
    const auto first = spec.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && spec[first] == '{') {
        c.doc = parse_json(spec, "inline config");
        c.base = fs::current_path();
        c.where = "inline config";
    } else {
        c.doc = parse_json(read_file(spec), spec);
        c.base = fs::path(spec).parent_path();
        c.where = spec;
    }
    if (!c.doc.is_object()) throw ConfigError(c.where + ": expected a JSON object");
    return c;
}

chebli::ChebliFamily family_of(const ConfigDoc& c) {
    if (c.doc.contains("family")) return family_from_block(c.doc.at("family"), c.base, c.where + ".family");
    return family_from_block(c.doc, c.base, c.where);
}

struct Common {
    std::string family;
    std::optional<double> eps;
    std::optional<double> xmax, step, lmax, tol;
    std::string in, out;
};

struct Resolved {
    chebli::ChebliFamily fam = chebli::ChebliFamily::dunkl(0.5);
    double eps = 0.0;
    verify::NumericBlock num;
};

Resolved resolve(const Common& o) {
    if (o.family.empty()) throw ConfigError("--family is required");
    auto doc = load_doc(o.family);
    Resolved r{family_of(doc), 0.0, {}};
    if (doc.doc.contains("eps")) r.eps = member(doc.doc, "eps", doc.where);
    if (doc.doc.contains("numeric")) {
        const auto& n = doc.doc.at("numeric");
        const std::string w = doc.where + ".numeric";
        if (!n.is_object()) throw ConfigError(w + ": expected an object");
        if (n.contains("xmax")) r.num.xmax = member(n, "xmax", w);
        if (n.contains("step")) r.num.step = member(n, "step", w);
        if (n.contains("lmax")) r.num.lmax = member(n, "lmax", w);
        if (n.contains("tol")) r.num.tol = member(n, "tol", w);
    }
    if (o.eps) r.eps = *o.eps;
    if (o.xmax) r.num.xmax = *o.xmax;
    if (o.step) r.num.step = *o.step;
    if (o.lmax) r.num.lmax = *o.lmax;
    if (o.tol) r.num.tol = *o.tol;
    if (!(std::abs(r.eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    verify::validate(r.num);
    return r;
}

fourier::QuadratureParams quad(const Resolved& r) {
    fourier::QuadratureParams q;
    q.radius = r.num.xmax;
    q.step = r.num.step;
    q.lmax = r.num.lmax;
    return q;
}

class Output {
public:
    explicit Output(std::string dir) : dir_(std::move(dir)) {}

    void write(const std::string& path, const std::string& text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            std::cout.flush();
            return;
        }
        fs::path p = path;
        if (!dir_.empty() && p.is_relative()) p = fs::path(dir_) / p;
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + p.string());
        out << text;
    }

private:
    std::string dir_;
};

std::string grid_csv(const SampledFunction& f, const std::string& first) {
    std::string s = first + ",re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        s += num(f.x(i)) + "," + num(f[i].real()) + "," + num(f[i].imag()) + "\n";
    return s;
}

SampledFunction input_or(const Common& o, const Resolved& r, const std::function<double(double)>& fallback) {
    if (o.in.empty())
        return SampledFunction::from_function(r.num.xmax, r.num.step, [&](double x) { return cplx(fallback(x)); });
    auto f = read_grid_csv(o.in);
    if (std::abs(f.step() - r.num.step) > 1e-12 * r.num.step || f.half() != grid_half(r.num.xmax, r.num.step))
        throw ConfigError(o.in + ": grid does not match --xmax/--step (radius " + num(f.radius()) + ", step " +
                          num(f.step()) + ")");
    return f;
}

cplx parse_lambda(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() == 1) return {parse_double(parts[0], "--lambda"), 0.0};
    if (parts.size() == 2) return {parse_double(parts[0], "--lambda"), parse_double(parts[1], "--lambda")};
    throw ConfigError("--lambda expects re or re,im");
}

std::string check_line(const std::string& id, bool pass, double observed, double tolerance, ojson extra = {}) {
    ojson j;
    j["check"] = id;
    j["status"] = pass ? "pass" : "fail";
    j["observed"] = observed;
    j["tolerance"] = tolerance;
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j.dump() + "\n";
}

void add_common(CLI::App* app, Common& o, bool numeric, bool io) {
    app->add_option("--family", o.family, "family block or run config: JSON path or inline JSON")->required();
    app->add_option("--eps", o.eps, "reflection parameter in [-1,1]");
    if (numeric) {
        app->add_option("--xmax", o.xmax, "grid radius");
        app->add_option("--step", o.step, "grid step");
        app->add_option("--lmax", o.lmax, "spectral cutoff");
        app->add_option("--tol", o.tol, "tolerance");
    }
    if (io) app->add_option("--in", o.in, "input CSV");
    app->add_option("--out", o.out, "output path (stdout when omitted)");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const TruncationError*>(&e) || dynamic_cast<const AccuracyError*>(&e) ||
        dynamic_cast<const ConsistencyError*>(&e))
        return kFail;
    return kUsage;
}

}  // namespace

chebli::ChebliFamily load_family(const std::string& spec) { return family_of(load_doc(spec)); }

SampledFunction read_grid_csv(const std::string& path) {
    auto csv = read_csv(path, 2);
    if (csv.rows.size() < 3 || csv.rows.size() % 2 == 0)
        throw ConfigError(path + ": need an odd number of rows on a symmetric grid");
    const std::size_t n = csv.rows.size() / 2;
    const double radius = csv.rows.back()[0];
    const double step = radius / static_cast<double>(n);
    std::vector<cplx> v;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const auto& r = csv.rows[i];
        const double x = (static_cast<double>(i) - static_cast<double>(n)) * step;
        if (std::abs(r[0] - x) > 1e-9 * std::max(1.0, radius))
            throw ConfigError(path + ":" + std::to_string(i + 2) + ": x is not on the symmetric uniform grid");
        v.emplace_back(r[1], r.size() > 2 ? r[2] : 0.0);
    }
    return SampledFunction(radius, step, std::move(v));
}

void write_grid_csv(const std::string& path, const SampledFunction& f, const std::string& first) {
    Output("").write(path, grid_csv(f, first));
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Differential-reflection operators: eigenfunctions, transforms and heat kernels"};
    app.require_subcommand(1);
    unsigned threads = 0;
    std::string out_dir;
    app.add_option("--threads", threads, "worker threads (0 = auto)");
    app.add_option("--out-dir", out_dir, "directory for relative output paths");

    Common o;
    double grid_max = 20.0;
    std::string lambda_text, op_name, fault;
    double support = 1.0, s = 1.0, umax = 4.0;
    bool timings = false;

    auto* fam_cmd = app.add_subcommand("family", "check the weight hypotheses");
    add_common(fam_cmd, o, false, false);
    fam_cmd->add_option("--grid-max", grid_max, "largest x scanned");

    auto* eig = app.add_subcommand("eigen", "eigenfunctions");
    eig->require_subcommand(1);
    auto* eig_eval = eig->add_subcommand("eval", "Psi and phi on the grid");
    add_common(eig_eval, o, true, false);
    eig_eval->add_option("--lambda", lambda_text, "spectral parameter re,im")->required();

    auto* itw = app.add_subcommand("intertwine", "transmutation and intertwining operators");
    itw->require_subcommand(1);
    auto* itw_apply = itw->add_subcommand("apply", "apply an operator to grid samples");
    add_common(itw_apply, o, true, true);
    itw_apply->add_option("--op", op_name, "E, Einv, tE, tEinv, V or tV")
        ->required()
        ->check(CLI::IsMember({"E", "Einv", "tE", "tEinv", "V", "tV"}));

    auto* tr = app.add_subcommand("transform", "spectral transform");
    tr->require_subcommand(1);
    auto* tr_fwd = tr->add_subcommand("forward", "transform on the spectral nodes");
    auto* tr_inv = tr->add_subcommand("inverse", "synthesis from spectral-node samples");
    auto* tr_rt = tr->add_subcommand("roundtrip", "forward then inverse");
    auto* tr_pl = tr->add_subcommand("plancherel", "bilinear and L2 identities");
    auto* tr_pw = tr->add_subcommand("paleywiener", "exponential type of a compactly supported input");
    for (auto* c : {tr_fwd, tr_inv, tr_rt, tr_pl, tr_pw}) add_common(c, o, true, true);
    tr_pw->add_option("--support", support, "support radius of the input");

    auto* ht = app.add_subcommand("heat", "heat kernel");
    ht->require_subcommand(1);
    auto* ht_scan = ht->add_subcommand("scan", "W(s;u,x) on a grid");
    add_common(ht_scan, o, false, false);
    ht_scan->add_option("--s", s, "time");
    ht_scan->add_option("--umax", umax, "u range");
    ht_scan->add_option("--xmax", o.xmax, "x range");
    ht_scan->add_option("--step", o.step, "grid step");
    ht_scan->add_option("--tol", o.tol, "tolerance");

    auto* vf = app.add_subcommand("verify", "property suite");
    vf->require_subcommand(1);
    auto* vf_all = vf->add_subcommand("all", "run every registered check");
    add_common(vf_all, o, true, false);
    vf_all->add_option("--fault", fault, "inject a fault")->check(CLI::IsMember({"density"}));
    vf_all->add_flag("--timings", timings, "include runtime_ms");
    auto* vf_list = vf->add_subcommand("list", "registered checks");
    vf_list->add_option("--out", o.out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    numeric::set_default_threads(threads);
    const Output out(out_dir);

    try {
        if (vf_list->parsed()) {
            ojson j = ojson::array();
            for (const auto& c : verify::registry()) j.push_back({{"check", c.id}, {"anchor", c.anchor}});
            out.write(o.out, j.dump(2) + "\n");
            return kOk;
        }

        if (ht_scan->parsed()) {
            if (!o.xmax) o.xmax = 4.0;
            if (!o.step) o.step = 1.0 / 16.0;
        }
        const Resolved r = resolve(o);

        if (fam_cmd->parsed()) {
            std::vector<double> grid;
            for (double x = 0.05; x <= grid_max + 1e-12; x += 0.05) grid.push_back(x);
            auto h = chebli::check_hypotheses(r.fam, grid);
            ojson j;
            j["family"] = r.fam.name();
            j["alpha"] = r.fam.alpha();
            j["beta"] = r.fam.beta();
            j["rho"] = r.fam.rho();
            j["positive"] = h.positive;
            j["increasing"] = h.increasing;
            j["increasing_violation_x"] = h.increasing_x;
            j["logder_decreasing"] = h.logder_decreasing;
            j["logder_violation_x"] = h.logder_x;
            j["tail_ok"] = h.tail_ok;
            j["tail_delta"] = std::isfinite(h.delta) ? ojson(h.delta) : ojson("inf");
            j["tail_k"] = h.k_fit;
            j["status"] = h.pass() ? "pass" : "fail";
            out.write(o.out, j.dump() + "\n");
            return h.pass() ? kOk : kFail;
        }

        if (eig_eval->parsed()) {
            const cplx lambda = parse_lambda(lambda_text);
            const double h = r.num.step;
            eigen::PsiEvaluator ev(r.fam, eigen::SpectralPoint::make(r.fam, lambda, r.eps), r.num.xmax,
                                   eigen::SolveOptions{1e-11, h});
            auto psi = ev.on_grid(r.num.xmax, h);
            const std::size_t n = grid_half(r.num.xmax, h);
            std::string csv = "x,re_psi,im_psi,re_phi,im_phi\n";
            for (std::size_t i = 0; i < psi.size(); ++i) {
                const double x = (static_cast<double>(i) - static_cast<double>(n)) * h;
                const cplx phi = ev.even(x);
                csv += num(x) + "," + num(psi[i].real()) + "," + num(psi[i].imag()) + "," + num(phi.real()) + "," +
                       num(phi.imag()) + "\n";
            }
            out.write(o.out, csv);
            return kOk;
        }

        if (itw_apply->parsed()) {
            auto f = input_or(o, r, [](double x) { return numeric::bump(x, 2.0, 1.0); });
            SampledFunction g;
            if (op_name == "V") {
                g = intertwine::v_eps(r.fam, r.eps, f);
            } else if (op_name == "tV") {
                g = intertwine::t_v_eps(r.fam, r.eps, f);
            } else {
                using intertwine::Direction;
                const Direction d = op_name == "E"      ? Direction::E
                                    : op_name == "Einv" ? Direction::EInv
                                    : op_name == "tE"   ? Direction::TE
                                                        : Direction::TEInv;
                g = intertwine::apply_e(intertwine::BesselKernelOp::make(r.fam, r.eps, d), f);
            }
            out.write(o.out, grid_csv(g, "x"));
            return kOk;
        }

        if (tr->parsed()) {
            const auto q = quad(r);
            if (tr_fwd->parsed()) {
                auto f = input_or(o, r, fourier::default_bump);
                fourier::SpectralDensity d(r.fam, r.eps);
                auto res = fourier::forward_nodes(r.fam, r.eps, f, d, q);
                std::string csv = "lambda,re,im\n";
                for (std::size_t k = 0; k < res.values.size(); ++k)
                    csv += num(res.lambdas[k].real()) + "," + num(res.values[k].real()) + "," +
                           num(res.values[k].imag()) + "\n";
                out.write(o.out, csv);
                return kOk;
            }
            if (tr_inv->parsed()) {
                if (o.in.empty()) throw ConfigError("transform inverse needs --in with lambda,re,im samples");
                auto csv = read_csv(o.in, 3);
                fourier::SpectralDensity d(r.fam, r.eps);
                fourier::TransformResult F;
                F.nodes = fourier::spectral_nodes(d, q.lmax, q.panel_width);
                F.radius = q.radius;
                F.step = q.step;
                if (csv.rows.size() != F.nodes.size())
                    throw ConfigError(o.in + ": expected " + std::to_string(F.nodes.size()) +
                                      " spectral nodes for this configuration, found " +
                                      std::to_string(csv.rows.size()));
                for (std::size_t k = 0; k < csv.rows.size(); ++k) {
                    const double l = F.nodes[k].lambda;
                    if (std::abs(csv.rows[k][0] - l) > 1e-9 * std::max(1.0, std::abs(l)))
                        throw ConfigError(o.in + ":" + std::to_string(k + 2) + ": lambda does not match node " +
                                          num(l));
                    F.lambdas.emplace_back(l);
                    F.values.emplace_back(csv.rows[k][1], csv.rows[k][2]);
                }
                auto f = fourier::inverse(r.fam, r.eps, F, d, q);
                out.write(o.out, grid_csv(f, "x"));
                return kOk;
            }
            if (tr_rt->parsed()) {
                auto f = input_or(o, r, fourier::default_bump);
                auto rt = fourier::roundtrip(r.fam, r.eps, f, q);
                const bool pass = rt.sup_error <= 1e-4;
                out.write(o.out, check_line("transform.roundtrip", pass, rt.sup_error, 1e-4,
                                            {{"nodes", rt.nodes}, {"tail_estimate", rt.tail_estimate}}));
                return pass ? kOk : kFail;
            }
            if (tr_pl->parsed()) {
                auto f = input_or(o, r, fourier::default_bump);
                auto g = SampledFunction::from_function(q.radius, q.step, [](double x) {
                    return cplx(numeric::bump(x + 0.3, 2.0, 8.0) * (1.0 + 0.5 * x));
                });
                auto p = fourier::plancherel_check(r.fam, r.eps, f, g, q);
                const bool pass = p.discrepancy() <= 1e-3;
                out.write(o.out, check_line("transform.plancherel", pass, p.discrepancy(), 1e-3,
                                            {{"bilinear", p.relative}, {"l2", p.l2_relative}}));
                return pass ? kOk : kFail;
            }
            if (tr_pw->parsed()) {
                SampledFunction f;
                if (o.in.empty()) {
                    f = SampledFunction::from_function(support, 1.0 / 512.0,
                                                       [&](double x) { return cplx(numeric::bump(x, support, 1.0)); });
                } else {
                    f = read_grid_csv(o.in);
                }
                std::vector<double> eta;
                for (int e = 10; e <= 80; ++e) eta.push_back(e);
                auto pw = fourier::paley_wiener_check(r.fam, r.eps, f, support, eta, {0.0, 1.0, 2.0, 3.0}, q.lmax);
                const double dev = std::abs(pw.r_fit / support - 1.0);
                const bool pass = dev <= 0.05 && pw.rl_ratio < 1e-3;
                out.write(o.out, check_line("transform.paleywiener", pass, pw.r_fit, support * 0.05,
                                            {{"support", support}, {"riemann_lebesgue", pw.rl_ratio},
                                             {"decay_ratio", pw.decay_ratio}}));
                return pass ? kOk : kFail;
            }
        }

        if (ht_scan->parsed()) {
            heat::HeatOptions ho;
            ho.tol = std::min(r.num.tol, 1e-10);
            heat::HeatEval he(r.fam, r.eps, s, r.num.xmax, r.num.step, ho);
            auto ug = heat::uniform_grid(umax, r.num.step);
            auto xg = heat::uniform_grid(r.num.xmax, r.num.step);
            std::string csv = "u,x,W\n";
            for (double u : ug)
                for (double x : xg) csv += num(u) + "," + num(x) + "," + num(he.w(u, x)) + "\n";
            out.write(o.out, csv);
            return kOk;
        }

        if (vf_all->parsed()) {
            verify::VerifyConfig cfg{r.fam, r.eps, r.num, fault == "density" ? 1.1 : 1.0};
            auto rep = verify::verify_suite(cfg);
            out.write(o.out, rep.to_json(timings));
            return rep.passed() ? kOk : kFail;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kUsage;
}

}  // namespace reflectra::cli
