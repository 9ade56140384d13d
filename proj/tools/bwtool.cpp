// bwtool: command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 io, 64 usage.

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bw/classifier.hpp"
#include "bw/distrib.hpp"
#include "bw/jsonio.hpp"
#include "bw/laurent.hpp"
#include "bw/lorentz.hpp"
#include "bw/neck.hpp"
#include "bw/suites.hpp"
#include "bw/weierstrass.hpp"

using namespace bw;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t n = 0;
        double v = std::stod(s, &n);
        if (n != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(Errc::usage, "cannot read a number from '" + s + "' in " + what);
    }
}

std::vector<double> numbers(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& t : split(s, ',')) out.push_back(to_double(t, what));
    return out;
}

cplx complex_arg(const std::string& s, const std::string& what) {
    auto v = numbers(s, what);
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() != 2) fail(Errc::usage, what + " expects re or re,im");
    return {v[0], v[1]};
}

Vec3 vec3_arg(const std::string& s, const std::string& what) {
    auto v = numbers(s, what);
    if (v.size() != 3) fail(Errc::usage, what + " expects x,y,z");
    return {v[0], v[1], v[2]};
}

Vec3c vec3c_arg(const std::string& s, const std::string& what) {
    auto parts = split(s, ';');
    if (parts.size() != 3) fail(Errc::usage, what + " expects re,im;re,im;re,im");
    return {complex_arg(parts[0], what), complex_arg(parts[1], what), complex_arg(parts[2], what)};
}

// Flat CSV of a JSON object: key,value per scalar member.
std::string flat_csv(const json& j) {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_number_float())
            os << it.key() << ',' << fmt12(v.get<double>()) << '\n';
        else if (v.is_primitive())
            os << it.key() << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    return os.str();
}

struct Common {
    std::string format = "json";
};

CatalogueParams params_from(double lambda, const std::string& c, double theta) {
    CatalogueParams p;
    p.lambda = lambda;
    p.c = complex_arg(c, "--c");
    p.theta = theta;
    return p;
}

// ---- classify

struct ClassifyOpts {
    std::string catalog = "builtin";
    std::string input;
    std::string only;
    double lambda = 1.0;
    std::string c = "0.5";
    double theta = 0.0;
};

int run_classify(const ClassifyOpts& o, const Common& cm) {
    std::vector<CatalogueEntry> cat;
    Figure1Table table;
    if (!o.input.empty()) {
        cat = catalogue_from_json(read_json_file(o.input));
        if (!o.only.empty()) cat = {find_entry(cat, o.only)};
        for (const auto& e : cat) table.rows.push_back(classify(e));
    } else {
        if (o.catalog != "builtin") fail(Errc::usage, "unknown catalog '" + o.catalog + "' (use builtin or --input)");
        cat = builtin_catalogue(params_from(o.lambda, o.c, o.theta));
        if (!o.only.empty()) cat = {find_entry(cat, o.only)};
        table = figure1_table(cat, !o.only.empty());
    }
    if (cm.format == "csv")
        std::cout << table.to_csv();
    else
        std::cout << dump17(to_json(table));
    int bad = 0;
    for (const auto& r : table.rows)
        for (const auto& d : r.discrepancies) {
            std::cerr << r.key << ": " << d << '\n';
            ++bad;
        }
    return bad ? 1 : 0;
}

// ---- verify

struct VerifyOpts {
    std::string lemma;
    int samples = 0;
    std::string alpha;
    std::uint64_t seed = 42;
    std::string input;
    bool summary = false;
};

int run_verify(const VerifyOpts& o, const Common& cm) {
    if (!has_suite(o.lemma)) {
        std::string names;
        for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
        fail(Errc::usage, "unknown lemma suite '" + o.lemma + "' (known: " + names + ")");
    }
    SuiteConfig cfg;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    if (!o.alpha.empty()) cfg.alphas = numbers(o.alpha, "--alpha");
    if (!o.input.empty()) cfg.field = laurent_from_json(read_json_file(o.input));
    SuiteReport r = run_suite(o.lemma, cfg);
    if (cm.format == "csv") {
        std::cout << "sample,slack\n";
        for (std::size_t i = 0; i < r.per_sample.size(); ++i) std::cout << i << ',' << fmt12(r.per_sample[i]) << '\n';
    } else {
        std::cout << dump17(to_json(r, !o.summary));
    }
    return r.passed() ? 0 : 1;
}

// ---- neck

struct NeckOpts {
    std::string builtin = "monomial";
    std::string csv;
    int theta0 = 2;
    double rmin = 1e-3;
    double R = 1.0;
    double eps = 0.05;
    int M = 128;
    int K = 256;
    std::uint64_t seed = 42;
};

int run_neck(const NeckOpts& o, const Common& cm) {
    ConformalImmersionSample s;
    if (!o.csv.empty()) {
        s = load_sample_csv(o.csv);
    } else if (o.builtin == "monomial") {
        s = monomial_sheet(o.theta0, o.rmin, o.R, o.M, o.K);
    } else if (o.builtin == "perturbed") {
        s = perturbed_graph(o.theta0, o.eps, o.rmin, o.R, o.M, o.K);
    } else if (o.builtin == "sphere") {
        s = sphere_patch(o.rmin, o.R, o.M, o.K);
    } else if (o.builtin == "random-graph") {
        s = random_minimal_graph(o.seed, o.rmin, o.R, o.M, o.K);
    } else {
        fail(Errc::usage, "unknown builtin sheet '" + o.builtin + "'");
    }
    NeckDecomposition d = decompose(s);
    json j;
    j["sample"] = o.csv.empty() ? o.builtin : o.csv;
    j["M"] = s.grid.M;
    j["K"] = s.grid.K;
    j["rmin"] = s.grid.r;
    j["R"] = s.grid.R;
    j["conformality_residual"] = s.conformality_residual;
    json dj = to_json(d);
    for (auto it = dj.begin(); it != dj.end(); ++it) j[it.key()] = it.value();
    std::cout << (cm.format == "csv" ? flat_csv(j) : dump17(j));
    return d.integral ? 0 : 1;
}

// ---- distrib

struct DistribOpts {
    int m = 1;
    int theta0 = 2;
    std::string c0 = "0.70710678118654752,0;0,0.70710678118654752;0,0";
    std::string gamma0 = "0,0,0";
    std::string w0 = "0,0,0";
    std::string gamma;  // default conj(C0)
    std::string eta = "0,0;0,0;0,0";
    std::string eps = "0.1,0.05,0.025,0.0125";
};

int run_distrib(const DistribOpts& o, const Common& cm) {
    BranchModel b;
    b.m = o.m;
    b.theta0 = o.theta0;
    b.C0 = vec3c_arg(o.c0, "--c0");
    b.gamma0 = vec3_arg(o.gamma0, "--gamma0");
    b.validate();
    TestVariation w;
    w.w0 = vec3_arg(o.w0, "--w0");
    if (o.gamma.empty())
        for (int i = 0; i < 3; ++i) w.gamma[i] = std::conj(b.C0[i]);
    else
        w.gamma = vec3c_arg(o.gamma, "--gamma");
    w.eta = vec3c_arg(o.eta, "--eta");
    ResidueLimit r = residue_limit(b, w, numbers(o.eps, "--eps"));
    double stated = stated_residue(b, w);
    json j = to_json(r);
    j["stated"] = stated;
    j["exact"] = exact_pairing_limit(b, w);
    j["relative_gap_to_stated"] = std::abs(r.limit - stated) / std::max(std::abs(stated), 1e-300);
    std::cout << (cm.format == "csv" ? flat_csv(j) : dump17(j));
    return 0;
}

// ---- lorentz-norm

struct LorentzOpts {
    std::string model = "grad-log";
    double p = 2.0;
    std::string q = "2";
    std::string annulus;
    double alpha = 0.5;
    double radius = 1.0;
    std::string flavor = "maximal";
    int nr = 512;
    int nt = 1024;
};

int run_lorentz(const LorentzOpts& o, const Common& cm) {
    LorentzIndex idx;
    if (o.q == "inf" || o.q == "infinity")
        idx = LorentzIndex::weak(o.p);
    else
        idx = LorentzIndex::finite(o.p, to_double(o.q, "--q"));
    Flavor fl;
    if (o.flavor == "maximal")
        fl = Flavor::maximal;
    else if (o.flavor == "quasi")
        fl = Flavor::quasi;
    else
        fail(Errc::usage, "--flavor is maximal or quasi");
    json j;
    j["model"] = o.model;
    double r, R;
    if (o.model == "grad-log") {
        auto a = numbers(o.annulus.empty() ? "0.01,1" : o.annulus, "--annulus");
        if (a.size() != 2) fail(Errc::usage, "--annulus expects r,R");
        r = a[0];
        R = a[1];
        LogPolarGrid g(r, R, o.nr, o.nt);
        double v = lorentz_norm(sample_field(g, [](double rho, double) { return 1.0 / rho; }), idx, fl);
        j["value"] = v;
        if (idx.q_infinite && fl == Flavor::maximal)
            j["closed_form"] = 2.0 * std::sqrt(kPi) * std::sqrt((R - r) / (R + r));
        else if (!idx.q_infinite && idx.q == idx.p)
            j["closed_form"] = std::pow(2.0 * kPi * (idx.p == 2.0 ? std::log(R / r)
                                                                   : (std::pow(R, 2.0 - idx.p) - std::pow(r, 2.0 - idx.p)) /
                                                                         (2.0 - idx.p)),
                                        1.0 / idx.p);
    } else if (o.model == "indicator") {
        if (!(o.alpha >= 0.0 && o.alpha < 1.0) || !(o.radius > 0.0)) fail(Errc::domain, "need 0 <= alpha < 1, radius > 0");
        double outer = (1.0 - o.alpha) * o.radius, inner = outer / 2.0;
        if (o.annulus.empty()) {
            r = inner / 2.0;
            R = 4.0 * outer;
        } else {
            auto a = numbers(o.annulus, "--annulus");
            if (a.size() != 2) fail(Errc::usage, "--annulus expects r,R");
            r = a[0];
            R = a[1];
        }
        if (!(r <= inner && R >= outer)) fail(Errc::domain, "the host annulus must contain the indicator support");
        LogPolarGrid g(r, R, o.nr, o.nt);
        double v = lorentz_norm(
            sample_field(g, [&](double rho, double) { return rho >= inner && rho <= outer ? 1.0 : 0.0; }), idx, fl);
        j["value"] = v;
        if (!idx.q_infinite && idx.p == 2.0 && idx.q == 1.0 && fl == Flavor::maximal)
            j["closed_form"] = 2.0 * std::sqrt(3.0 * kPi) * outer;
    } else {
        fail(Errc::usage, "unknown model '" + o.model + "' (grad-log or indicator)");
    }
    j["p"] = idx.p;
    j["q"] = idx.q_infinite ? json("infinity") : json(idx.q);
    j["flavor"] = o.flavor;
    j["annulus"] = json::array({r, R});
    j["grid"] = json::array({o.nr, o.nt});
    std::cout << (cm.format == "csv" ? flat_csv(j) : dump17(j));
    return 0;
}

// ---- expand-end

struct ExpandOpts {
    std::string catalog = "builtin";
    std::string input;
    std::string only;
    std::string end;
    int order = 12;
    double lambda = 1.0;
    std::string c = "0.5";
    double theta = 0.0;
};

int run_expand(const ExpandOpts& o, const Common& cm) {
    std::vector<CatalogueEntry> cat;
    if (!o.input.empty())
        cat = catalogue_from_json(read_json_file(o.input));
    else if (o.catalog == "builtin")
        cat = builtin_catalogue(params_from(o.lambda, o.c, o.theta));
    else
        fail(Errc::usage, "unknown catalog '" + o.catalog + "'");
    const CatalogueEntry* e = nullptr;
    if (!o.only.empty())
        e = &find_entry(cat, o.only);
    else if (cat.size() == 1)
        e = &cat.front();
    else
        fail(Errc::usage, "choose a surface with --only");
    if (!e->surface) fail(Errc::invalid, "entry '" + e->key + "' has no Weierstrass data");
    const WeierstrassSurface& s = *e->surface;
    std::vector<EndPoint> ends = s.ends;
    if (!o.end.empty()) ends = {o.end == "inf" ? EndPoint::inf() : EndPoint::at(complex_arg(o.end, "--end"))};
    json out;
    out["surface"] = to_json(s);
    json reps = json::array();
    std::ostringstream csv;
    csv << "end,m,k,second_residue,log_term,independent,flux_x,flux_y,flux_z\n";
    for (const auto& p : ends) {
        EndReport r = end_expand(s, p, o.order, false);
        reps.push_back(to_json(r));
        csv << r.end.str() << ',' << r.m << ',' << r.k << ',' << r.second_residue << ',' << r.log_term << ','
            << r.independence << ',' << fmt12(r.flux[0]) << ',' << fmt12(r.flux[1]) << ',' << fmt12(r.flux[2]) << '\n';
    }
    out["ends"] = reps;
    std::cout << (cm.format == "csv" ? csv.str() : dump17(out));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bwtool: branched Willmore surface numerics"};
    app.require_subcommand(1);
    Common cm;
    app.add_option("--format", cm.format, "output format")->check(CLI::IsMember({"json", "csv"}));

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cm.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    };

    ClassifyOpts co;
    auto* cls = app.add_subcommand("classify", "bubble admissibility table");
    cls->add_option("--catalog", co.catalog, "catalogue (builtin)");
    cls->add_option("--input", co.input, "surface JSON file");
    cls->add_option("--only", co.only, "single catalogue key");
    cls->add_option("--lambda", co.lambda, "family parameter lambda");
    cls->add_option("--c", co.c, "family parameter c (re or re,im)");
    cls->add_option("--theta", co.theta, "family parameter theta");
    add_format(cls);

    VerifyOpts vo;
    auto* ver = app.add_subcommand("verify", "run a seeded property suite");
    ver->add_option("--lemma", vo.lemma, "suite name")->required();
    ver->add_option("--samples", vo.samples, "sample count (0 = suite default)");
    ver->add_option("--alpha", vo.alpha, "shrink factors, comma separated (l21l2)");
    ver->add_option("--seed", vo.seed, "random seed");
    ver->add_option("--input", vo.input, "Laurent field JSON file");
    ver->add_flag("--summary", vo.summary, "omit per-sample slack");
    add_format(ver);

    NeckOpts no;
    auto* nk = app.add_subcommand("neck", "conformal factor decomposition on an annulus");
    nk->add_option("--builtin", no.builtin, "monomial | perturbed | sphere | random-graph");
    nk->add_option("--csv", no.csv, "sample file with rows r,theta,x,y,z");
    nk->add_option("--theta0", no.theta0, "branch order");
    nk->add_option("--rmin", no.rmin, "inner radius");
    nk->add_option("--R", no.R, "outer radius");
    nk->add_option("--eps", no.eps, "perturbation size");
    nk->add_option("--M", no.M, "radial intervals");
    nk->add_option("--K", no.K, "angular nodes");
    nk->add_option("--seed", no.seed, "seed for random-graph");
    add_format(nk);

    DistribOpts dopt;
    auto* ds = app.add_subcommand("distrib", "distributional residue at a branch point");
    ds->add_option("--m", dopt.m, "pole order of H");
    ds->add_option("--theta0", dopt.theta0, "branch order");
    ds->add_option("--c0", dopt.c0, "C0 as re,im;re,im;re,im");
    ds->add_option("--gamma0", dopt.gamma0, "first residue x,y,z");
    ds->add_option("--w0", dopt.w0, "w(0) as x,y,z");
    ds->add_option("--gamma", dopt.gamma, "coefficient of z^m in w (default conj C0)");
    ds->add_option("--eta", dopt.eta, "coefficient of |z|^2 z^m in w");
    ds->add_option("--eps", dopt.eps, "decreasing radii, comma separated");
    add_format(ds);

    LorentzOpts lo;
    auto* ln = app.add_subcommand("lorentz-norm", "Lorentz norm of a model field");
    ln->add_option("--model", lo.model, "grad-log | indicator");
    ln->add_option("--p", lo.p, "p");
    ln->add_option("--q", lo.q, "q or infinity");
    ln->add_option("--annulus", lo.annulus, "r,R");
    ln->add_option("--alpha", lo.alpha, "indicator shrink factor");
    ln->add_option("--radius", lo.radius, "indicator radius");
    ln->add_option("--flavor", lo.flavor, "maximal | quasi");
    ln->add_option("--nr", lo.nr, "radial cells");
    ln->add_option("--nt", lo.nt, "angular cells");
    add_format(ln);

    ExpandOpts eo;
    auto* ex = app.add_subcommand("expand-end", "Laurent expansion of a surface at its ends");
    ex->add_option("--catalog", eo.catalog, "catalogue (builtin)");
    ex->add_option("--input", eo.input, "surface JSON file");
    ex->add_option("--only", eo.only, "catalogue key");
    ex->add_option("--end", eo.end, "inf or re,im (default: every end)");
    ex->add_option("--order", eo.order, "expansion order");
    ex->add_option("--lambda", eo.lambda, "family parameter lambda");
    ex->add_option("--c", eo.c, "family parameter c");
    ex->add_option("--theta", eo.theta, "family parameter theta");
    add_format(ex);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*cls) return run_classify(co, cm);
        if (*ver) return run_verify(vo, cm);
        if (*nk) return run_neck(no, cm);
        if (*ds) return run_distrib(dopt, cm);
        if (*ln) return run_lorentz(lo, cm);
        if (*ex) return run_expand(eo, cm);
    } catch (const Error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 64;
}
