// polymem command line: deterministic JSON experiments over the library.
// Exit codes: 0 success, 1 input error, 2 genericity failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <polymem/polymem.hpp>
#include <polymem/verify.hpp>

using namespace polymem;

namespace {

struct CommonOpts {
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> seeds;
    std::string out;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--prime", c.primes, "prime modulus (repeatable; default 32003 and 46337)");
    cmd->add_option("--seed", c.seeds, "RNG seed (repeatable; default 1 and 2)");
    cmd->add_option("--out", c.out, "write the JSON report to this file (default: stdout)");
    cmd->add_flag("-v,--verbose", c.verbose, "progress notes on stderr");
}

Protocol make_protocol(const CommonOpts& c) {
    Protocol proto;
    if (!c.primes.empty()) {
        proto.primes = c.primes;
    } else {
        std::uint64_t p0 = 32003;
        if (const char* env = std::getenv("POLYMEM_PRIME_DEFAULT")) p0 = std::strtoull(env, nullptr, 10);
        proto.primes = {p0, p0 == 32003 ? 46337ULL : 32003ULL};
    }
    if (!c.seeds.empty()) proto.seeds = c.seeds;
    for (auto p : proto.primes) PrimeField check(p);  // validate early
    return proto;
}

Json config_json(const std::string& command, const CommonOpts& c, const Protocol& proto,
                 const Json& extra) {
    Json j = extra;
    j["command"] = command;
    j["primes"] = proto.primes;
    j["seeds"] = proto.seeds;
    return j;
}

void emit(const CommonOpts& c, const Json& report) {
    if (c.out.empty())
        std::cout << report.dump(2) << "\n";
    else
        write_json_file(c.out, report);
}

Json vertices_json(const HPolytope& x) {
    Json arr = Json::array();
    for (const auto& v : x.vertices()) {
        Json p = Json::array();
        for (const auto& coord : v) p.push_back(rational_to_string(coord));
        arr.push_back(p);
    }
    return arr;
}

// Multiplier supports for a membership run: explicit --C files win, otherwise
// foundation supports from (A, B) with an optional t override.
struct SupportChoice {
    std::vector<PointSet> C;
    std::optional<FoundationResult> foundation;
};

SupportChoice choose_supports(const PointSet& a, const HPolytope& b, std::size_t k,
                              const std::vector<std::string>& c_paths,
                              const std::optional<std::string>& t_override) {
    SupportChoice sc;
    if (!c_paths.empty()) {
        for (const auto& path : c_paths) sc.C.push_back(pointset_from_json(load_json_file(path)));
        return sc;
    }
    FoundationResult found = foundation_supports(a, b, k, /*override_hypotheses=*/true);
    if (t_override) {
        const Rational t = parse_rational(*t_override);
        if (t < 0) throw InputError("--t must be nonnegative");
        Point neg_u(found.translation);
        for (auto& c : neg_u) c = -c;
        const HPolytope b0 = translate(b, neg_u);
        PointSet supp(b.dim());
        if (t == 0)
            supp.insert(Point(b.dim(), 0));
        else
            supp = lattice_points(dilate(b0, t));
        found.t = t;
        found.supports.assign(k, supp.translated(neg_u));
    }
    sc.C = found.supports;
    sc.foundation = found;
    return sc;
}

Json foundation_json(const FoundationResult& f) {
    Json j;
    j["t"] = rational_to_string(f.t);
    j["translation"] = to_json(f.translation);
    Json supports = Json::array();
    for (const auto& s : f.supports) supports.push_back(to_json(s));
    j["supports"] = supports;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"polymem: exact membership spaces of sparse polynomial systems"};
    app.require_subcommand(1);

    // ---- membership ----
    auto* cmd_mem = app.add_subcommand("membership", "dimension and basis of C^A cap (f_1..f_k)");
    CommonOpts mem_c;
    std::string mem_a, mem_b;
    std::vector<std::string> mem_cs;
    std::size_t mem_k = 2;
    std::optional<std::string> mem_t;
    cmd_mem->add_option("--A", mem_a, "target support (point-set JSON)")->required();
    cmd_mem->add_option("--B", mem_b, "generator body (polytope JSON)")->required();
    cmd_mem->add_option("--C", mem_cs, "multiplier supports (point-set JSON, repeatable)");
    cmd_mem->add_option("--k", mem_k, "number of generators (default 2)");
    cmd_mem->add_option("--t", mem_t, "override the foundation dilation factor");
    add_common(cmd_mem, mem_c);

    // ---- decompose ----
    auto* cmd_dec = app.add_subcommand("decompose", "express g as sum c_i f_i with bounded supports");
    CommonOpts dec_c;
    std::string dec_g, dec_a, dec_b;
    std::vector<std::string> dec_cs;
    std::size_t dec_k = 2;
    std::optional<std::string> dec_t;
    cmd_dec->add_option("--g", dec_g, "polynomial JSON")->required();
    cmd_dec->add_option("--A", dec_a, "target support (point-set JSON)")->required();
    cmd_dec->add_option("--B", dec_b, "generator body (polytope JSON)")->required();
    cmd_dec->add_option("--C", dec_cs, "multiplier supports (repeatable)");
    cmd_dec->add_option("--k", dec_k, "number of generators (default 2)");
    cmd_dec->add_option("--t", dec_t, "override the foundation dilation factor");
    add_common(cmd_dec, dec_c);

    // ---- chain ----
    auto* cmd_chain = app.add_subcommand("chain", "build and validate a normal chain");
    CommonOpts chain_c;
    std::string chain_b, chain_tmax = "3";
    std::optional<std::string> chain_gap;
    bool chain_psi = false;
    cmd_chain->add_option("--B", chain_b, "base body (polytope JSON)")->required();
    cmd_chain->add_option("--t-max", chain_tmax, "target dilation factor (rational, default 3)");
    cmd_chain->add_option("--equidistant", chain_gap, "fixed dilation gap per round (rational)");
    cmd_chain->add_flag("--psi-order", chain_psi, "shift facets in the dual-form order");
    add_common(cmd_chain, chain_c);

    // ---- foundation ----
    auto* cmd_found = app.add_subcommand("foundation", "multiplier supports k x Z(tB) for (A, B)");
    CommonOpts found_c;
    std::string found_a, found_b;
    std::size_t found_k = 2;
    cmd_found->add_option("--A", found_a, "target support (point-set JSON)")->required();
    cmd_found->add_option("--B", found_b, "generator body (polytope JSON)")->required();
    cmd_found->add_option("--k", found_k, "number of generators (default 2)");
    add_common(cmd_found, found_c);

    // ---- stabilize ----
    auto* cmd_stab = app.add_subcommand("stabilize", "dimension sequence along a normal chain");
    CommonOpts stab_c;
    std::string stab_a, stab_b, stab_tmax = "3";
    std::size_t stab_k = 2;
    cmd_stab->add_option("--A", stab_a, "target support (point-set JSON)")->required();
    cmd_stab->add_option("--B", stab_b, "chain base (polytope JSON)")->required();
    cmd_stab->add_option("--k", stab_k, "number of generators (default 2)");
    cmd_stab->add_option("--t-max", stab_tmax, "chain target factor (default 3)");
    add_common(cmd_stab, stab_c);

    // ---- koszul ----
    auto* cmd_kos = app.add_subcommand("koszul", "truncated-complex count vs direct kernel rank");
    CommonOpts kos_c;
    std::string kos_cfile, kos_b;
    std::size_t kos_k = 2;
    cmd_kos->add_option("--C", kos_cfile, "multiplier support (point-set JSON)")->required();
    cmd_kos->add_option("--B", kos_b, "generator body (polytope JSON)")->required();
    cmd_kos->add_option("--k", kos_k, "number of generators (default 2)");
    add_common(cmd_kos, kos_c);

    // ---- osculate ----
    auto* cmd_osc = app.add_subcommand("osculate", "osculating flag of a sampled plane curve");
    CommonOpts osc_c;
    std::string osc_a, osc_b;
    cmd_osc->add_option("--A", osc_a, "hyperplane support (point-set JSON)")->required();
    cmd_osc->add_option("--B", osc_b, "curve body (polytope JSON)")->required();
    add_common(cmd_osc, osc_c);

    // ---- polytope ----
    auto* cmd_poly = app.add_subcommand("polytope", "ad-hoc polytope operations");
    CommonOpts poly_c;
    std::string poly_op, poly_x, poly_y, poly_t = "1", poly_v;
    unsigned poly_j = 1;
    cmd_poly
        ->add_option("--op", poly_op,
                     "one of vertices|lattice|dilate|erode|erode-iter|minkowski|face|bernstein|"
                     "min-factor|epsilon0")
        ->required();
    cmd_poly->add_option("--X", poly_x, "first operand (JSON)")->required();
    cmd_poly->add_option("--Y", poly_y, "second operand (JSON)");
    cmd_poly->add_option("--t", poly_t, "dilation factor (rational)");
    cmd_poly->add_option("--v", poly_v, "direction, comma separated integers");
    cmd_poly->add_option("--j", poly_j, "iteration count for erode-iter");
    add_common(cmd_poly, poly_c);

    // ---- verify ----
    auto* cmd_ver = app.add_subcommand("verify", "run a named acceptance suite");
    CommonOpts ver_c;
    std::string ver_suite = "all";
    cmd_ver->add_option("--suite", ver_suite, "suite name (default: all)");
    add_common(cmd_ver, ver_c);

    CLI11_PARSE(app, argc, argv);

    if (cmd_mem->parsed()) {
        const Protocol proto = make_protocol(mem_c);
        const PointSet a = pointset_from_json(load_json_file(mem_a));
        const HPolytope b = polytope_from_json(load_json_file(mem_b));
        const std::size_t k = mem_cs.empty() ? mem_k : mem_cs.size();
        const SupportChoice sc = choose_supports(a, b, k, mem_cs, mem_t);
        GenericProblem gp{a, std::vector<PointSet>(k, lattice_points(b)), sc.C};
        MembershipReport rep = membership_dim_generic(gp, proto);
        if (sc.foundation) rep.translation = sc.foundation->translation;
        Json out = to_json(rep);
        if (sc.foundation) out["foundation"] = foundation_json(*sc.foundation);
        out["config"] = config_json("membership", mem_c, proto,
                                    Json{{"A", mem_a}, {"B", mem_b}, {"k", k}});
        emit(mem_c, out);
        return 0;
    }

    if (cmd_dec->parsed()) {
        const Protocol proto = make_protocol(dec_c);
        const PointSet a = pointset_from_json(load_json_file(dec_a));
        const HPolytope b = polytope_from_json(load_json_file(dec_b));
        const std::size_t k = dec_cs.empty() ? dec_k : dec_cs.size();
        const SupportChoice sc = choose_supports(a, b, k, dec_cs, dec_t);
        GenericProblem gp{a, std::vector<PointSet>(k, lattice_points(b)), sc.C};
        MembershipProblem prob = materialize(gp, proto.primes[0], proto.seeds[0]);
        const SparsePoly g =
            poly_from_json(load_json_file(dec_g), PrimeField(proto.primes[0]));
        Json out;
        if (auto dec = decompose(g, prob)) {
            out["status"] = "ok";
            Json mult = Json::array();
            for (const auto& c : dec->multipliers) mult.push_back(to_json(c));
            out["multipliers"] = mult;
            out["kernelDim"] = dec->kernel.size();
        } else {
            out["status"] = "not-a-member";
        }
        out["config"] = config_json("decompose", dec_c, proto,
                                    Json{{"A", dec_a}, {"B", dec_b}, {"g", dec_g}, {"k", k}});
        emit(dec_c, out);
        return 0;
    }

    if (cmd_chain->parsed()) {
        const Protocol proto = make_protocol(chain_c);
        const HPolytope b = polytope_from_json(load_json_file(chain_b));
        ChainOptions opts;
        if (chain_gap) opts.equidistant_gap = parse_rational(*chain_gap);
        opts.psi_order = chain_psi;
        const NormalChain chain = build_normal_chain(b, parse_rational(chain_tmax), opts);
        Json out = to_json(chain);
        Json fails = Json::array();
        for (const auto& s : validate_chain(chain)) fails.push_back(s);
        out["failures"] = fails;
        out["config"] = config_json("chain", chain_c, proto,
                                    Json{{"B", chain_b}, {"tMax", chain_tmax}});
        emit(chain_c, out);
        return 0;
    }

    if (cmd_found->parsed()) {
        const Protocol proto = make_protocol(found_c);
        const PointSet a = pointset_from_json(load_json_file(found_a));
        const HPolytope b = polytope_from_json(load_json_file(found_b));
        const FoundationResult f = foundation_supports(a, b, found_k, true);
        GenericProblem gp{a, std::vector<PointSet>(found_k, lattice_points(b)), f.supports};
        MembershipReport rep = membership_dim_generic(gp, proto);
        rep.translation = f.translation;
        Json out = foundation_json(f);
        out["report"] = to_json(rep);
        out["config"] = config_json("foundation", found_c, proto,
                                    Json{{"A", found_a}, {"B", found_b}, {"k", found_k}});
        emit(found_c, out);
        return 0;
    }

    if (cmd_stab->parsed()) {
        const Protocol proto = make_protocol(stab_c);
        const PointSet a = pointset_from_json(load_json_file(stab_a));
        const HPolytope b = polytope_from_json(load_json_file(stab_b));
        const NormalChain chain = build_normal_chain(b, parse_rational(stab_tmax));
        const StabilizationReport rep = stabilization_check(a, chain, stab_k, proto);
        Json out;
        out["firstIndex"] = rep.first_index;
        out["dims"] = rep.dims;
        out["constant"] = rep.constant;
        out["chainTerms"] = chain.terms.size();
        out["config"] = config_json("stabilize", stab_c, proto,
                                    Json{{"A", stab_a}, {"B", stab_b}, {"k", stab_k},
                                         {"tMax", stab_tmax}});
        emit(stab_c, out);
        return 0;
    }

    if (cmd_kos->parsed()) {
        const Protocol proto = make_protocol(kos_c);
        const PointSet c = pointset_from_json(load_json_file(kos_cfile));
        const HPolytope b = polytope_from_json(load_json_file(kos_b));
        const KoszulReport rep = koszul_report(c, b, kos_k, proto);
        Json out;
        out["formula"] = rep.formula;
        out["variant"] = rep.variant;
        out["oracle"] = rep.oracle;
        out["formulaMatches"] = rep.formula_matches;
        out["variantMatches"] = rep.variant_matches;
        out["confirmedReading"] = rep.formula_matches ? "formula" : (rep.variant_matches ? "variant" : "neither");
        out["config"] = config_json("koszul", kos_c, proto,
                                    Json{{"B", kos_b}, {"C", kos_cfile}, {"k", kos_k}});
        emit(kos_c, out);
        return 0;
    }

    if (cmd_osc->parsed()) {
        const Protocol proto = make_protocol(osc_c);
        const PointSet a = pointset_from_json(load_json_file(osc_a));
        const HPolytope b = polytope_from_json(load_json_file(osc_b));
        if (bernstein_number_2d(conv_hull_2d(a), b) <= 0)
            throw InputError("osculate: the supports must have positive mixed volume");
        const SparsePoly f =
            random_generic(lattice_points(b), mix_seed(proto.seeds[0], 0), proto.primes[0]);
        std::string last_error = "no attempt";
        for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
            try {
                const auto pt = find_smooth_point(f, proto.seeds[0] + attempt);
                const std::size_t n_rows = a.size() + 5;
                const BranchSeries br = branch_series(f, pt, n_rows);
                const FpMatrix m = coeff_matrix(a, br, n_rows);
                const std::size_t r = m.rank();
                Json flags = Json::array();
                for (std::size_t i = 0; i + 1 <= r; ++i) {
                    const SparsePoly g = osculating_poly(a, f, pt, i, proto.seeds[0] + attempt);
                    const auto mult = multiplicity(g, br);
                    flags.push_back(Json{{"i", i}, {"achievedMultiplicity", mult ? *mult : n_rows}});
                }
                Json out;
                out["point"] = Json::array({pt.first, pt.second});
                out["hullDim"] = r == 0 ? 0 : r - 1;
                out["dimV"] = a.size() - r;
                out["flags"] = flags;
                out["config"] = config_json("osculate", osc_c, proto,
                                            Json{{"A", osc_a}, {"B", osc_b}});
                emit(osc_c, out);
                return 0;
            } catch (const NotFlagGeneric& e) {
                last_error = e.what();
            } catch (const NoSmoothPointFound& e) {
                last_error = e.what();
            }
        }
        throw GenericityFailure("osculate: resamples exhausted: " + last_error);
    }

    if (cmd_poly->parsed()) {
        const Protocol proto = make_protocol(poly_c);
        Json out;
        auto direction = [&]() {
            Point v;
            std::stringstream ss(poly_v);
            std::string tok;
            while (std::getline(ss, tok, ',')) v.push_back(std::stoll(tok));
            return v;
        };
        if (poly_op == "vertices") {
            out["vertices"] = vertices_json(polytope_from_json(load_json_file(poly_x)));
        } else if (poly_op == "lattice") {
            out = to_json(lattice_points(polytope_from_json(load_json_file(poly_x))));
        } else if (poly_op == "dilate") {
            out = to_json(dilate(polytope_from_json(load_json_file(poly_x)), parse_rational(poly_t)));
        } else if (poly_op == "erode" || poly_op == "erode-iter") {
            if (poly_y.empty()) throw InputError("erode needs --Y");
            auto r = erode_iter(polytope_from_json(load_json_file(poly_x)),
                                polytope_from_json(load_json_file(poly_y)),
                                poly_op == "erode" ? 1 : poly_j);
            out = r ? to_json(*r) : Json{{"empty", true}};
        } else if (poly_op == "minkowski") {
            if (poly_y.empty()) throw InputError("minkowski needs --Y");
            out = to_json(minkowski_sum(polytope_from_json(load_json_file(poly_x)),
                                        polytope_from_json(load_json_file(poly_y))));
        } else if (poly_op == "face") {
            out = to_json(face(polytope_from_json(load_json_file(poly_x)), direction()));
        } else if (poly_op == "bernstein") {
            if (poly_y.empty()) throw InputError("bernstein needs --Y");
            out["value"] = bernstein_number_2d(polytope_from_json(load_json_file(poly_x)),
                                               polytope_from_json(load_json_file(poly_y)));
        } else if (poly_op == "min-factor") {
            if (poly_y.empty()) throw InputError("min-factor needs --Y");
            out["value"] = rational_to_string(
                min_enclosing_factor(pointset_from_json(load_json_file(poly_x)),
                                     polytope_from_json(load_json_file(poly_y))));
        } else if (poly_op == "epsilon0") {
            auto [e0, tc] = epsilon0(polytope_from_json(load_json_file(poly_x)));
            out["epsilon0"] = rational_to_string(e0);
            out["tCrit"] = rational_to_string(tc);
        } else {
            throw InputError("unknown polytope op: " + poly_op);
        }
        out["config"] = config_json("polytope", poly_c, proto,
                                    Json{{"op", poly_op}, {"X", poly_x}, {"Y", poly_y}});
        emit(poly_c, out);
        return 0;
    }

    if (cmd_ver->parsed()) {
        std::string self = "";
        std::error_code ec;
        auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
        if (!ec) self = exe.string();
        const auto results = verify::run_suite(ver_suite, self);
        bool all = true;
        Json arr = Json::array();
        for (const auto& r : results) {
            all = all && r.passed;
            std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " ("
                      << r.name << "): " << r.detail << "\n";
            arr.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                               {"detail", r.detail}});
        }
        if (!ver_c.out.empty()) {
            Json out;
            out["results"] = arr;
            out["allPassed"] = all;
            out["config"] = config_json("verify", ver_c, make_protocol(ver_c),
                                        Json{{"suite", ver_suite}});
            write_json_file(ver_c.out, out);
        }
        return all ? 0 : 1;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const GenericityFailure& e) {
        std::cerr << "genericity failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
