// spanlab command-line laboratory: graph generation, expansion checks,
// subgraph census and counting bounds, containment search, fragmentation
// schedules, and Monte Carlo threshold estimation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spanlab/census.hpp"
#include "spanlab/config.hpp"
#include "spanlab/embed.hpp"
#include "spanlab/expansion.hpp"
#include "spanlab/fragment.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/schedule.hpp"
#include "spanlab/threshold.hpp"

using nlohmann::json;
using namespace spanlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParameter = 2;
constexpr int kExitBudget = 3;

const char* kVersion = "spanlab 0.1.0";

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open graph file: " + path);
    return read_edge_list(in);
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    out << body;
}

json verdict_json(const ConditionVerdict& v) {
    json j;
    j["condition"] = v.condition;
    j["holds"] = v.holds;
    j["vacuous"] = v.vacuous;
    j["inconclusive"] = v.inconclusive;
    j["reached_v"] = v.reached_v;
    j["witness"] = v.witness;
    j["stats"] = {{"min_boundary_seen", v.min_boundary_seen},
                  {"sets_visited", v.sets_visited},
                  {"witness_boundary", v.witness_boundary}};
    return j;
}

json trace_json(const FragmentTrace& t) {
    json j;
    j["version"] = kVersion;
    j["preset"] = preset_name(t.config.preset);
    j["config"] = {{"n", t.config.n},
                   {"eps", t.config.eps},
                   {"w", t.config.w_effective()},
                   {"C", t.config.bigC},
                   {"coarse_B", t.config.coarse_B},
                   {"sharp_delta", t.config.sharp_delta},
                   {"k", t.config.k},
                   {"population", t.config.population},
                   {"seed", t.config.seed},
                   {"search_budget", t.config.search_budget},
                   {"restarts", t.config.restarts},
                   {"stick_bias", t.config.stick_bias},
                   {"round_cap", t.config.round_cap},
                   {"exact", t.config.exact}};
    j["chi"] = t.chi;
    j["mu"] = t.mu;
    j["l0"] = t.l0;
    j["beta"] = t.beta;
    j["sampler_is_heuristic"] = t.sampler_is_heuristic;
    j["w_rejections"] = t.w_rejections;
    j["rounds"] = json::array();
    for (const auto& r : t.rounds) {
        json jr;
        jr["m"] = r.m;
        jr["fragment_sizes"] = r.fragment_sizes;
        jr["median_size"] = r.median_size;
        jr["inconclusive"] = r.inconclusive;
        jr["trivial"] = r.trivial;
        json hist = json::object();
        for (auto [len, cnt] : r.closed_run_histogram)
            hist[std::to_string(len)] = cnt;
        jr["closed_run_histogram"] = hist;
        jr["smoothing_events"] = r.smoothing_events;
        jr["pieces_moved"] = r.pieces_moved;
        jr["smoothing_refused"] = r.smoothing_refused;
        jr["conservation_failures"] = r.conservation_failures;
        jr["witness_failures"] = r.witness_failures;
        jr["long_run_after_smooth"] = r.long_run_after_smooth;
        jr["roundtrip_failures"] = r.roundtrip_failures;
        j["rounds"].push_back(jr);
    }
    j["covered"] = t.covered;
    j["cover_total"] = t.cover_total;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale spanning-subgraph threshold laboratory"};
    app.require_subcommand(1);

    // ---- gen
    auto* gen = app.add_subcommand("gen", "emit a family instance as an edge list");
    std::string gen_family = "sq_cycle", gen_out;
    int gen_n = 10;
    gen->add_option("--family", gen_family);
    gen->add_option("--n", gen_n)->required();
    gen->add_option("--out", gen_out);

    // ---- check-expansion
    auto* chk = app.add_subcommand("check-expansion", "boundary rule verdicts");
    std::string chk_graph, chk_rule = "d_plus_1", chk_out;
    int chk_vmax = 8;
    std::int64_t chk_budget = 10'000'000;
    double chk_w = 1.0, chk_delta = 0.25;
    chk->add_option("--graph", chk_graph)->required();
    chk->add_option("--rule", chk_rule);
    chk->add_option("--vmax", chk_vmax);
    chk->add_option("--budget", chk_budget);
    chk->add_option("--w", chk_w);
    chk->add_option("--delta", chk_delta);
    chk->add_option("--out", chk_out);

    // ---- census
    auto* cen = app.add_subcommand("census", "exact (l,x,c) subgraph census");
    std::string cen_graph, cen_out, cen_engine = "powerset";
    int cen_lmax = -1;
    bool cen_ext = false;
    cen->add_option("--graph", cen_graph)->required();
    cen->add_option("--lmax", cen_lmax);
    cen->add_option("--engine", cen_engine);
    cen->add_flag("--extensions", cen_ext);
    cen->add_option("--out", cen_out);

    // ---- bounds
    auto* bnd = app.add_subcommand("bounds", "census vs counting bounds");
    std::string bnd_graph, bnd_out, bnd_consts;
    bnd->add_option("--graph", bnd_graph)->required();
    bnd->add_option("--consts", bnd_consts, "a1,a2,b1,b2 (omit to calibrate)");
    bnd->add_option("--out", bnd_out);

    // ---- contain
    auto* con = app.add_subcommand("contain", "spanning-copy search");
    std::string con_graph, con_family = "sq_cycle", con_out;
    std::int64_t con_budget = 100'000'000;
    std::uint64_t con_seed = 0;
    bool con_heuristic = false;
    con->add_option("--graph", con_graph)->required();
    con->add_option("--family", con_family);
    con->add_option("--budget", con_budget);
    con->add_option("--seed", con_seed);
    con->add_flag("--heuristic", con_heuristic);
    con->add_option("--out", con_out);

    // ---- fragment
    auto* fra = app.add_subcommand("fragment", "multi-round fragmentation driver");
    std::string fra_preset = "square_days", fra_out;
    ScheduleConfig fcfg;
    fra->add_option("--preset", fra_preset);
    fra->add_option("--n", fcfg.n)->required();
    fra->add_option("--eps", fcfg.eps);
    fra->add_option("--w", fcfg.w);
    fra->add_option("--C", fcfg.bigC);
    fra->add_option("--B", fcfg.coarse_B);
    fra->add_option("--sharp-delta", fcfg.sharp_delta);
    fra->add_option("--k", fcfg.k);
    fra->add_option("--pop", fcfg.population);
    fra->add_option("--seed", fcfg.seed);
    fra->add_option("--budget", fcfg.search_budget);
    fra->add_option("--restarts", fcfg.restarts);
    fra->add_option("--stick", fcfg.stick_bias);
    fra->add_option("--ride-run", fcfg.ride_run);
    fra->add_option("--round-cap", fcfg.round_cap);
    fra->add_option("--rounds", fcfg.rounds_override);
    fra->add_flag("--exact", fcfg.exact);
    fra->add_option("--out", fra_out);
    std::string fra_hist;
    fra->add_option("--hist", fra_hist, "CSV of per-round fragment-size histograms");

    // ---- threshold
    auto* thr = app.add_subcommand("threshold", "Monte Carlo containment curve");
    std::string thr_family = "sq_cycle", thr_out, thr_grid;
    int thr_n = 12, thr_trials = 200;
    std::uint64_t thr_seed = 7;
    std::int64_t thr_budget = 100'000'000;
    double thr_tol = 0.02;
    bool thr_bisect = false;
    thr->add_option("--family", thr_family);
    thr->add_option("--n", thr_n)->required();
    thr->add_option("--trials", thr_trials);
    thr->add_option("--seed", thr_seed);
    thr->add_option("--budget", thr_budget);
    thr->add_option("--grid", thr_grid, "comma-separated p values");
    thr->add_option("--tol", thr_tol);
    thr->add_flag("--bisect", thr_bisect);
    thr->add_option("--out", thr_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Graph g = build_family(parse_family(gen_family), gen_n);
            std::ostringstream os;
            os << "# " << kVersion << " gen family=" << gen_family << " n=" << gen_n
               << "\n";
            write_edge_list(os, g);
            write_output(gen_out, os.str());
            return kExitOk;
        }
        if (*chk) {
            Graph g = load_graph(chk_graph);
            SparsityRule rule;
            if (chk_rule == "d_plus_1") rule = SparsityRule::min_d_plus_1;
            else if (chk_rule == "riordan_2d") rule = SparsityRule::riordan_2d;
            else if (chk_rule == "thm51") rule = SparsityRule::thm51_growth;
            else throw ParameterError("unknown rule '" + chk_rule + "'");
            ConditionVerdict v = check_local_sparsity(g, rule, 3, chk_vmax, chk_budget,
                                                      chk_w, chk_delta);
            json j = verdict_json(v);
            j["version"] = kVersion;
            write_output(chk_out, j.dump(2) + "\n");
            if (v.inconclusive) return kExitBudget;
            return v.holds ? kExitOk : kExitViolation;
        }
        if (*cen) {
            Graph g = load_graph(cen_graph);
            int lmax = cen_lmax < 0 ? static_cast<int>(g.edge_count()) : cen_lmax;
            CensusTable t;
            if (cen_engine == "powerset") {
                std::int64_t aut = cen_ext ? automorphism_count(g, 12) : 0;
                t = census_powerset(g, cen_ext, aut);
            } else if (cen_engine == "connected") {
                t = census_connected_growth(g, lmax);
            } else {
                throw ParameterError("unknown census engine '" + cen_engine + "'");
            }
            std::ostringstream os;
            os << "# " << kVersion << " census engine=" << cen_engine
               << " lmax=" << t.lmax_reached << (t.partial ? " partial" : "") << "\n";
            os << "l,x,c,sigma,count\n";
            for (const auto& [k, e] : t.buckets)
                os << k.l << ',' << k.x << ',' << k.c << ','
                   << 0.5 * sigma2_of(t.d, k) << ',' << e.count << "\n";
            write_output(cen_out, os.str());
            return t.partial ? kExitBudget : kExitOk;
        }
        if (*bnd) {
            Graph g = load_graph(bnd_graph);
            std::int64_t aut = automorphism_count(g, 12);
            CensusTable t = census_powerset(g, true, aut);
            BoundConsts consts;
            if (!bnd_consts.empty()) {
                std::istringstream is(bnd_consts);
                char comma;
                is >> consts.a1 >> comma >> consts.a2 >> comma >> consts.b1 >> comma >>
                    consts.b2;
            } else {
                auto cal = calibrate_constants(t, aut);
                if (!cal.alpha_ok || !cal.beta_ok)
                    throw BudgetError("calibration failed within the constant range");
                consts = cal.consts;
            }
            std::ostringstream os;
            os << "# " << kVersion << " bounds consts=" << consts.a1 << ',' << consts.a2
               << ',' << consts.b1 << ',' << consts.b2 << "\n";
            os << "l,x,c,sigma,count,alpha_bound,beta_ref,beta_bound,jhc_bound,"
                  "alpha_pass,beta_pass,jhc_pass\n";
            bool all_ok = true;
            for (const auto& [k, e] : t.buckets) {
                double s2 = sigma2_of(t.d, k);
                bool window = e.in_window && s2 >= 0;
                double la = window ? alpha_bound_ln(t.d, t.n, k, consts.a1, consts.a2)
                                   : std::nan("");
                double lb = window
                                ? beta_bound_ln(t.d, t.n, k, consts.b1, consts.b2, aut)
                                : std::nan("");
                double lj = jhc_bound_ln(static_cast<std::int64_t>(g.edge_count()),
                                         g.n(), k, t.d);
                bool pa = !window || count_le_bound(e.count, la);
                bool pb = !window || count_le_bound(e.ext_max, lb);
                bool pj = count_le_bound(e.count, lj);
                all_ok = all_ok && pa && pb && pj;
                os << k.l << ',' << k.x << ',' << k.c << ',' << 0.5 * s2 << ','
                   << e.count << ',' << (window ? std::exp(la) : std::nan("")) << ','
                   << e.ext_max << ',' << (window ? std::exp(lb) : std::nan("")) << ','
                   << std::exp(lj) << ',' << pa << ',' << pb << ',' << pj << "\n";
            }
            write_output(bnd_out, os.str());
            return all_ok ? kExitOk : kExitViolation;
        }
        if (*con) {
            Graph g = load_graph(con_graph);
            ContainResult r = find_spanning_copy(g, parse_family(con_family), con_budget,
                                                 con_seed, !con_heuristic);
            json j;
            j["version"] = kVersion;
            j["result"] = r.status == SearchStatus::found
                              ? "found"
                              : (r.status == SearchStatus::none ? "none" : "inconclusive");
            j["embedding"] = r.mapping;
            j["nodes_visited"] = r.nodes;
            write_output(con_out, j.dump(2) + "\n");
            return r.status == SearchStatus::inconclusive ? kExitBudget : kExitOk;
        }
        if (*fra) {
            if (fra_preset == "square_days") fcfg.preset = PresetKind::square_days;
            else if (fra_preset == "coarse") fcfg.preset = PresetKind::coarse;
            else if (fra_preset == "sharp1") fcfg.preset = PresetKind::sharp1;
            else if (fra_preset == "sharp2") fcfg.preset = PresetKind::sharp2;
            else throw ParameterError("unknown preset '" + fra_preset + "'");
            FragmentTrace t = run_schedule(fcfg);
            write_output(fra_out, trace_json(t).dump(2) + "\n");
            if (!fra_hist.empty()) {
                std::ostringstream os;
                os << "round,size,count\n";
                for (std::size_t r = 0; r < t.rounds.size(); ++r) {
                    std::map<int, int> hist;
                    for (int s : t.rounds[r].fragment_sizes) ++hist[s];
                    for (auto [size, cnt] : hist)
                        os << r << ',' << size << ',' << cnt << "\n";
                }
                write_output(fra_hist, os.str());
            }
            return kExitOk;
        }
        if (*thr) {
            FamilySpec spec = parse_family(thr_family);
            std::ostringstream os;
            os << "# " << kVersion << " threshold family=" << thr_family
               << " n=" << thr_n << " trials=" << thr_trials << " seed=" << thr_seed
               << " ci=wilson95\n";
            os << "p,successes,decided,inconclusive,ci_lo,ci_hi\n";
            if (thr_bisect) {
                ThresholdEstimate est = bisect_threshold(thr_n, spec, thr_trials,
                                                         thr_tol, thr_seed, thr_budget);
                for (const auto& pt : est.curve)
                    os << pt.p << ',' << pt.successes << ',' << pt.decided << ','
                       << pt.inconclusive << ',' << pt.ci.lo << ',' << pt.ci.hi << "\n";
                os << "# p_hat=" << est.p_hat << (est.anomaly ? " anomaly" : "") << "\n";
                write_output(thr_out, os.str());
                return est.anomaly ? kExitViolation : kExitOk;
            }
            std::vector<double> grid;
            if (!thr_grid.empty()) {
                std::istringstream is(thr_grid);
                std::string tok;
                while (std::getline(is, tok, ',')) grid.push_back(std::stod(tok));
            } else {
                for (double p = 0.3; p <= 0.901; p += 0.1) grid.push_back(p);
            }
            for (std::size_t i = 0; i < grid.size(); ++i) {
                CurvePoint pt = containment_prob(thr_n, grid[i], spec, thr_trials,
                                                 thr_budget, thr_seed,
                                                 static_cast<int>(i), true);
                os << pt.p << ',' << pt.successes << ',' << pt.decided << ','
                   << pt.inconclusive << ',' << pt.ci.lo << ',' << pt.ci.hi << "\n";
            }
            write_output(thr_out, os.str());
            return kExitOk;
        }
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const BudgetError& e) {
        std::cerr << "budget/infeasible: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitOk;
}
