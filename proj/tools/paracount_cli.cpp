// paracount: exact counting of geometrically indecomposable quasi-parabolic
// structures on vector bundles over P^1 over finite fields, with the Higgs
// point-count cross-checks.  JSON reports on stdout.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "paracount/higgs.hpp"
#include "paracount/report.hpp"

using namespace paracount;

namespace {

struct CommonOpts {
    std::string shape, profile, points, mu, lambda, flags = "full";
    long q = 0;
    int jobs = 0;
    std::string csv, cache_dir;
};

BundleShape parse_shape(const std::string& s) {
    return BundleShape::from_degrees(parse_int_list(s));
}

const FqField& field_of(long q) {
    auto [p, k] = prime_power_decompose(q);
    return make_field(p, k);
}

DivisorSpec divisor_of(const FqField& F, const CommonOpts& opt) {
    if (!opt.points.empty()) {
        std::vector<ClosedPoint> pts;
        std::stringstream ss(opt.points);
        std::string item;
        while (std::getline(ss, item, ',')) {
            FPoly f = parse_poly(F, item);
            if (!f.is_monic() || !fp_is_irreducible(f))
                throw std::domain_error("--points entries must be monic irreducible: " + item);
            pts.push_back(ClosedPoint{&F, f});
        }
        return DivisorSpec(F, pts);
    }
    return DivisorSpec::from_profile(F, parse_int_list(opt.profile));
}

Multipartition mu_of(const CommonOpts& opt, int n, int r) {
    if (!opt.mu.empty()) return parse_multipartition(opt.mu);
    if (opt.flags == "full" || opt.flags == "borelic") return full_flags(n, r);
    if (opt.flags == "none") return no_flags(n, r);
    throw std::domain_error("--flags must be full|borelic|none (or pass --mu)");
}

void emit(const Json& j, const CommonOpts& opt) {
    std::cout << j.dump(2) << "\n";
    if (!opt.csv.empty()) {
        std::ofstream f(opt.csv);
        f << json_to_csv(j);
    }
}

Json eval_list(const QPoly& poly, const std::vector<long>& qs) {
    Json evals = Json::array();
    for (long q : qs)
        evals.push_back(Json{{"q", q}, {"value", rat_to_string(poly.eval(Rat(q)))}});
    return evals;
}

void add_common(CLI::App* cmd, CommonOpts& opt, bool need_shape = true) {
    if (need_shape)
        cmd->add_option("--shape", opt.shape,
                        "line bundle degrees with repetition, e.g. 1,0 for O(1)+O(0)")
            ->required();
    cmd->add_option("--profile", opt.profile, "point degrees, e.g. 1,1,1,1");
    cmd->add_option("--points", opt.points, "explicit monic irreducible polynomials over F_q");
    cmd->add_option("--mu", opt.mu, "multipartition, per point ';', parts ','");
    cmd->add_option("--flags", opt.flags, "full|borelic|none shorthand (default full)");
    cmd->add_option("--q", opt.q, "prime power for numeric routes / evaluations");
    cmd->add_option("--jobs", opt.jobs, "parallel width of inner sums");
    cmd->add_option("--csv", opt.csv, "also write a flattened CSV report to this path");
    cmd->add_option("--cache", opt.cache_dir, "directory for interpolated H-polynomials");
}

int run_count(const std::string& route, CommonOpts& opt) {
    Json out{{"command", "count"}, {"route", route}};
    BundleShape shape = parse_shape(opt.shape);
    int n = shape.rank();
    if (route == "rank2") {
        if (n != 2) throw std::domain_error("rank2 route needs a rank-2 shape");
        DegreeProfile profile = parse_int_list(opt.profile);
        QPoly A = rank2_closed(shape.b.front(), shape.b.back(), profile);
        out["inputs"] = Json{{"shape", shape.to_string()}, {"profile", opt.profile}};
        out["polynomial"] = poly_to_json(A);
        if (opt.q) out["evaluations"] = eval_list(A, {opt.q});
        emit(out, opt);
        return 0;
    }
    if (route == "formula") {
        DegreeProfile profile = parse_int_list(opt.profile);
        Multipartition mu = mu_of(opt, n, static_cast<int>(profile.size()));
        HPolyCache cache(opt.cache_dir, opt.jobs);
        QPoly A = a_formula(shape, profile, mu, cache);
        out["inputs"] = Json{{"shape", shape.to_string()},
                             {"profile", opt.profile},
                             {"mu", multipartition_to_string(mu)}};
        out["polynomial"] = poly_to_json(A);
        if (opt.q) out["evaluations"] = eval_list(A, {opt.q});
        emit(out, opt);
        return 0;
    }
    if (route == "brute" || route == "twist") {
        if (!opt.q) throw std::domain_error("--q is required for the " + route + " route");
        const FqField& F = field_of(opt.q);
        DivisorSpec D = divisor_of(F, opt);
        BundleContext ctx(shape, F);
        Multipartition mu = mu_of(opt, n, static_cast<int>(D.points.size()));
        Int value = (route == "brute") ? count_A_direct(ctx, D, mu) : count_A_twist(ctx, D, mu);
        Json pts = Json::array();
        for (const auto& pt : D.points) pts.push_back(pt.poly.to_string());
        out["inputs"] = Json{{"shape", shape.to_string()},
                             {"q", opt.q},
                             {"points", pts},
                             {"mu", multipartition_to_string(mu)}};
        out["value"] = value.get_str();
        emit(out, opt);
        return 0;
    }
    throw std::domain_error("unknown count route: " + route);
}

int run_higgs(const std::string& route, CommonOpts& opt) {
    if (!opt.q) throw std::domain_error("--q is required for higgs");
    const FqField& F = field_of(opt.q);
    BundleShape shape = parse_shape(opt.shape);
    DivisorSpec D = divisor_of(F, opt);
    int n = shape.rank();
    Multipartition mu = mu_of(opt, n, static_cast<int>(D.points.size()));
    Json out{{"command", "higgs"}, {"route", route}};
    Json pts = Json::array();
    for (const auto& pt : D.points) pts.push_back(pt.poly.to_string());
    out["inputs"] = Json{{"shape", shape.to_string()},
                         {"q", opt.q},
                         {"points", pts},
                         {"mu", multipartition_to_string(mu)}};
    if (route == "direct" || route == "fourier") {
        BundleContext ctx(shape, F);
        auto specs = find_generic(n, D, mu);
        Json orbits = Json::array();
        for (const auto& sp : specs) orbits.push_back(sp.to_string());
        out["orbits"] = orbits;
        out["d_A"] = d_dim(specs, D);
        if (route == "direct") {
            Int Y = y_count(ctx, D, specs);
            out["y_count"] = Y.get_str();
            out["x_count"] = x_count(ctx, D, specs).get_str();
        } else {
            out["x_count"] = fourier_count(ctx, D, specs).get_str();
        }
        emit(out, opt);
        return 0;
    }
    if (route == "verify" || route == "verify-maintheo") {
        HPolyCache cache(opt.cache_dir, opt.jobs);
        auto rep = verify_maintheo(shape, D, mu, &cache);
        out["report"] = report_to_json(rep);
        emit(out, opt);
        return rep.pass ? 0 : 1;
    }
    if (route == "verify-lasttheo") {
        HPolyCache cache(opt.cache_dir, opt.jobs);
        Multipartition lam =
            opt.lambda.empty() ? mu : parse_multipartition(opt.lambda);
        auto rep = verify_lasttheo(shape, D, lam, cache);
        out["report"] = report_to_json(rep);
        emit(out, opt);
        return rep.pass ? 0 : 1;
    }
    throw std::domain_error("unknown higgs route: " + route);
}

int run_verify(const std::string& suite, CommonOpts& opt, int nmax) {
    Json out{{"command", "verify"}, {"suite", suite}};
    VerifyReport rep;
    if (suite == "hua") {
        rep = verify_hua(nmax ? nmax : 2, parse_int_list(opt.profile));
    } else if (suite == "descent") {
        rep = verify_descent(opt.q ? opt.q : 2, parse_int_list(opt.profile));
    } else if (suite == "position") {
        BundleShape shape = parse_shape(opt.shape.empty() ? "0,0" : opt.shape);
        auto [p, k] = prime_power_decompose(opt.q ? opt.q : 2);
        DegreeProfile profile = parse_int_list(opt.profile);
        Multipartition mu = mu_of(opt, shape.rank(), static_cast<int>(profile.size()));
        rep = verify_position(shape, p, k, profile, mu);
    } else if (suite == "degree-sum") {
        HPolyCache cache(opt.cache_dir, opt.jobs);
        DegreeProfile profile = parse_int_list(opt.profile);
        int n = opt.shape.empty() ? 2 : parse_shape(opt.shape).rank();
        Multipartition mu = mu_of(opt, n, static_cast<int>(profile.size()));
        rep = verify_degree_sum(n, 0, profile, mu, cache);
    } else if (suite == "charsum") {
        if (!opt.q) throw std::domain_error("--q required for charsum");
        const FqField& F = field_of(opt.q);
        BundleShape shape = parse_shape(opt.shape.empty() ? "0,0" : opt.shape);
        DivisorSpec D = divisor_of(F, opt);
        Multipartition mu = mu_of(opt, shape.rank(), static_cast<int>(D.points.size()));
        rep = verify_charsum(shape, D, mu);
    } else if (suite == "kostka-oracle") {
        rep = verify_kostka(nmax ? nmax : 3);
    } else {
        throw std::domain_error("unknown suite: " + suite);
    }
    out["report"] = report_to_json(rep);
    emit(out, opt);
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact counts of geometrically indecomposable parabolic structures on P^1"};
    app.require_subcommand(1);
    CommonOpts opt;
    std::string route, suite, basis = "h";
    int nmax = 0;

    auto* count = app.add_subcommand("count", "A-counts by brute|twist|formula|rank2 routes");
    count->add_option("--route", route, "brute|twist|formula|rank2")->required();
    add_common(count, opt);

    auto* higgs = app.add_subcommand("higgs", "Higgs-side point counts and verifications");
    higgs->add_option("--route", route, "direct|fourier|verify-maintheo|verify-lasttheo")
        ->required();
    higgs->add_option("--lambda", opt.lambda, "per-point cycle types for the twisted route");
    add_common(higgs, opt);

    auto* verify = app.add_subcommand("verify", "named verification suites");
    verify->add_option("--suite", suite,
                       "hua|descent|position|degree-sum|charsum|kostka-oracle")
        ->required();
    verify->add_option("--nmax", nmax, "rank bound for hua/kostka suites");
    add_common(verify, opt, false);
    verify->add_option("--shape", opt.shape, "shape for shape-specific suites");

    auto* kostka = app.add_subcommand("kostka", "modified Kostka-Foulkes polynomials");
    kostka->add_option("--n", nmax, "print the full K~ matrix for partitions of n");
    kostka->add_option("--lambda", opt.lambda, "single entry: lambda (with --mu)");
    kostka->add_option("--mu", opt.mu, "single entry: mu");
    kostka->add_option("--csv", opt.csv, "CSV output path");

    auto* pair = app.add_subcommand("pair", "Hall pairings of the master series");
    pair->add_option("--basis", basis, "h (A-counts) or p (power-sum pairing)");
    pair->add_option("--lambda", opt.lambda, "multipartition for the p-pairing");
    add_common(pair, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (opt.jobs > 0) set_jobs(opt.jobs);
        if (count->parsed()) return run_count(route, opt);
        if (higgs->parsed()) return run_higgs(route, opt);
        if (verify->parsed()) return run_verify(suite, opt, nmax);
        if (kostka->parsed()) {
            Json out{{"command", "kostka"}};
            if (!opt.lambda.empty() && !opt.mu.empty()) {
                Partition lam = parse_int_list(opt.lambda), mu = parse_int_list(opt.mu);
                out["lambda"] = opt.lambda;
                out["mu"] = opt.mu;
                out["polynomial"] = poly_to_json(kostka_foulkes(lam, mu));
            } else {
                int n = nmax ? nmax : 3;
                Json table = Json::object();
                for (const auto& lam : partitions_of(n)) {
                    Json row = Json::object();
                    for (const auto& mu2 : partitions_of(n))
                        row[partition_to_string(mu2)] =
                            kostka_foulkes(lam, mu2).to_string();
                    table[partition_to_string(lam)] = row;
                }
                out["n"] = n;
                out["matrix"] = table;
            }
            emit(out, opt);
            return 0;
        }
        if (pair->parsed()) {
            BundleShape shape = parse_shape(opt.shape);
            DegreeProfile profile = parse_int_list(opt.profile);
            HPolyCache cache(opt.cache_dir, opt.jobs);
            Json out{{"command", "pair"}, {"basis", basis}};
            QPoly P;
            if (basis == "h") {
                Multipartition mu = mu_of(opt, shape.rank(), static_cast<int>(profile.size()));
                P = a_formula(shape, profile, mu, cache);
                out["mu"] = multipartition_to_string(mu);
            } else if (basis == "p") {
                Multipartition lam = parse_multipartition(opt.lambda);
                P = pair_with_power(shape, profile, lam, cache);
                out["lambda"] = multipartition_to_string(lam);
            } else {
                throw std::domain_error("--basis must be h or p");
            }
            out["inputs"] = Json{{"shape", shape.to_string()}, {"profile", opt.profile}};
            out["polynomial"] = poly_to_json(P);
            if (opt.q) out["evaluations"] = eval_list(P, {opt.q});
            emit(out, opt);
            return 0;
        }
    } catch (const std::exception& e) {
        Json err{{"error", Json{{"code", "infeasible-or-invalid"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
    return 2;
}
