// sparseavg: construct sparse averaging families and verify their bounds.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sav/acceptance.hpp"
#include "sav/arith.hpp"
#include "sav/blocks.hpp"
#include "sav/cancellation.hpp"
#include "sav/dyadic.hpp"
#include "sav/dynamics.hpp"
#include "sav/finfield.hpp"
#include "sav/groups.hpp"
#include "sav/oscillation.hpp"
#include "sav/report.hpp"
#include "sav/smoothing.hpp"
#include "sav/speckled.hpp"
#include "sav/transfer.hpp"
#include "sav/weak11.hpp"

using namespace sav;

namespace {

struct Global {
    uint64_t seed = 1;
    std::string out = "out";
    int threads = 2;
    bool threshold_failed = false;

    std::string path(const std::string& name) {
        std::filesystem::create_directories(out);
        return out + "/" + name;
    }
    void manifest(const std::string& command, const std::string& cfg) {
        write_manifest(path("manifest-" + command + ".json"), command, cfg, seed);
    }
};

std::string rat_str(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

GroupModel model_by_name(const std::string& name) {
    if (name == "z1") return GroupModel::zd(1);
    if (name == "z2") return GroupModel::zd(2);
    if (name == "z3") return GroupModel::zd(3);
    if (name == "heis3") return GroupModel::heis3();
    throw CLI::ValidationError("--group must be one of z1|z2|z3|heis3");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse averaging families: constructions and bound checks"};
    app.require_subcommand(1);
    Global g;
    if (const char* env = std::getenv("SPARSE_ERGODIC_SEED")) g.seed = std::strtoull(env, nullptr, 10);
    app.add_option("--seed", g.seed, "global seed (env SPARSE_ERGODIC_SEED overrides default)");
    app.add_option("--out", g.out, "output directory");
    app.add_option("--jobs", g.threads, "worker threads");

    // ---------------- blocks ----------------
    auto* blocks = app.add_subcommand("blocks", "block plans and diagnostics");
    blocks->require_subcommand(1);
    {
        auto* plan = blocks->add_subcommand("plan", "generate and validate a block plan");
        static int k = 8;
        static std::string rho = "1";
        plan->add_option("--k", k);
        plan->add_option("--rho", rho);
        plan->callback([&]() {
            BlockPlan p = generate_block_plan(k, rat_from_decimal(rho));
            CsvWriter csv(g.path("blocks-plan.csv"), {"k", "u", "a", "prefix_ratio"});
            int64_t prefix = 0;
            for (size_t i = 0; i < p.x.u.size(); ++i) {
                Rat ratio = i ? Rat(prefix, p.x.a[i]) : Rat(0);
                csv.row({std::to_string(i + 1), std::to_string(p.x.u[i]), std::to_string(p.x.a[i]),
                         rat_str(ratio)});
                prefix += p.x.a[i];
            }
            g.manifest("blocks-plan", "{\"k\":" + std::to_string(k) + ",\"rho\":\"" + rho + "\"}");
        });

        auto* temp = blocks->add_subcommand("tempelman", "A(k,r) Tempelman/Folner grid");
        static int tk = 6;
        temp->add_option("--k", tk);
        temp->callback([&]() {
            BlockPlan p = generate_block_plan(std::max(2, tk));
            CsvWriter csv(g.path("blocks-tempelman.csv"),
                          {"k", "r", "size", "diff", "ratio", "folner_defect"});
            for (int kk = 1; kk <= tk; ++kk) {
                int64_t ak = p.x.a[kk - 1];
                for (int64_t r : {int64_t(1), (ak + 1) / 2, ak}) {
                    if (r < 1 || r > ak) continue;
                    auto rep = tempelman_folner_report(intermediate_set(p.x, kk, r));
                    csv.row({std::to_string(kk), std::to_string(r), std::to_string(rep.size),
                             std::to_string(rep.diff_size), rat_str(rep.ratio),
                             rat_str(rep.folner_defect[0])});
                }
            }
            g.manifest("blocks-tempelman", "{\"k\":" + std::to_string(tk) + "}");
        });

        auto* div = blocks->add_subcommand("diverge", "divergence witness averages");
        static int dk = 5;
        div->add_option("--kmax", dk);
        div->callback([&]() {
            auto rows = divergence_witness(generate_witness_plan(dk), dk);
            CsvWriter csv(g.path("blocks-diverge.csv"),
                          {"k", "left_face_avg", "left_face_bound", "block_end_avg"});
            for (const auto& r : rows)
                csv.row({std::to_string(r.k), rat_str(r.left_face_avg), rat_str(r.left_face_bound),
                         rat_str(r.block_end_avg)});
            for (const auto& r : rows)
                if (!(r.left_face_avg > Rat(1, 2))) g.threshold_failed = true;
            g.manifest("blocks-diverge", "{\"kmax\":" + std::to_string(dk) + "}");
        });

        auto* corners = blocks->add_subcommand("corners", "corners-first Tempelman ratios");
        static int ck = 3;
        corners->add_option("--k", ck);
        corners->callback([&]() {
            auto plan = generate_corners_plan(2, ck);
            std::vector<int64_t> radii;
            for (size_t i = 0; i < plan.w.size(); ++i) {
                radii.push_back(plan.a[i] + plan.w[i] / 2);
                radii.push_back(2 * (plan.a[i] + plan.w[i]));
            }
            auto rows = corners_first_check(plan, radii);
            CsvWriter csv(g.path("blocks-corners.csv"), {"r", "count", "diff", "ratio"});
            for (const auto& r : rows)
                csv.row({std::to_string(r.r), std::to_string(r.count), std::to_string(r.diff_count),
                         rat_str(r.ratio)});
            g.manifest("blocks-corners", "{\"k\":" + std::to_string(ck) + "}");
        });

        auto* cnt = blocks->add_subcommand("count-en", "unrestricted divergence count #E_n");
        static int64_t n = 4;
        cnt->add_option("--n", n);
        cnt->callback([&]() {
            auto uc = unrestricted_divergence_count(n);
            std::cout << uc.count.get_str() << "\n";
            CsvWriter csv(g.path("blocks-count-en.csv"), {"n", "count", "ratio_nlogn"});
            csv.row({std::to_string(n), uc.count.get_str(), CsvWriter::num(uc.ratio_to_nlogn)});
            g.manifest("blocks-count-en", "{\"n\":" + std::to_string(n) + "}");
        });
    }

    // ---------------- random ----------------
    auto* random = app.add_subcommand("random", "random sparse measures");
    random->require_subcommand(1);
    {
        static std::string kind = "speckled";
        static int d = 2, jmin = 3, jmax = 8, trials = 5;
        static std::string gamma = "0.8", alpha = "0.4";
        for (auto* sc : {random->add_subcommand("profile", "cancellation profile of nu_j * nu_j~"),
                         random->add_subcommand("sample", "emit one sample as JSON lines"),
                         random->add_subcommand("sweep", "empirical weak-(1,1) sweep"),
                         random->add_subcommand("enumerate", "norm-ordered enumeration")}) {
            sc->add_option("--kind", kind, "speckled|plaid");
            sc->add_option("--d", d);
            sc->add_option("--gamma", gamma);
            sc->add_option("--alpha", alpha);
            sc->add_option("--jmin", jmin);
            sc->add_option("--jmax", jmax);
            sc->add_option("--trials", trials);
        }
        random->get_subcommand("profile")->callback([&]() {
            std::ostringstream cfgs;
            cfgs << "{\"kind\":\"" << kind << "\",\"d\":" << d << ",\"jmin\":" << jmin
                 << ",\"jmax\":" << jmax << ",\"trials\":" << trials << "}";
            if (kind == "speckled") {
                CsvWriter csv(g.path("random-profile.csv"),
                              {"seed", "j", "at0", "sup_punctured", "r_j", "R_j", "slope"});
                for (int t = 0; t < trials; ++t) {
                    SpeckledConfig cfg;
                    cfg.d = d;
                    cfg.gamma = rat_from_decimal(gamma);
                    cfg.seed = g.seed + (uint64_t)t;
                    cfg.jmax = jmax;
                    auto prof = speckled_cancellation_profile(cfg, jmin, jmax, g.threads);
                    for (const auto& r : prof.rows)
                        csv.row({std::to_string(t), std::to_string(r.j), rat_str(r.at0),
                                 rat_str(r.sup_punctured), std::to_string(r.support_size),
                                 std::to_string(r.support_radius), CsvWriter::num(prof.fitted_slope)});
                }
            } else {
                CsvWriter csv(g.path("random-profile.csv"),
                              {"seed", "j", "at0", "sup_I0", "sup_I1", "sup_I2", "sup_I12", "recon"});
                for (int t = 0; t < trials; ++t) {
                    PlaidConfig cfg;
                    cfg.d = d;
                    cfg.alpha = rat_from_decimal(alpha);
                    cfg.seed = g.seed + (uint64_t)t;
                    cfg.jmax = jmax;
                    auto prof = plaid_cancellation_profile(cfg, jmin, jmax);
                    for (const auto& r : prof.rows)
                        csv.row({std::to_string(t), std::to_string(r.j), rat_str(r.at0),
                                 rat_str(r.sup_by_pattern[0]), rat_str(r.sup_by_pattern[1]),
                                 rat_str(r.sup_by_pattern[2]), rat_str(r.sup_by_pattern[3]),
                                 r.reconstruction_ok ? "1" : "0"});
                    for (const auto& r : prof.rows)
                        if (!r.reconstruction_ok) g.threshold_failed = true;
                }
            }
            g.manifest("random-profile", cfgs.str());
        });
        random->get_subcommand("sample")->callback([&]() {
            std::ofstream os(g.path("random-sample.jsonl"));
            SparseMeasure mu(1), nu(1);
            if (kind == "speckled") {
                SpeckledConfig cfg;
                cfg.d = d;
                cfg.gamma = rat_from_decimal(gamma);
                cfg.seed = g.seed;
                cfg.jmax = jmax;
                auto smp = sample_speckled(cfg, jmax);
                mu = smp.mu;
                nu = smp.nu;
            } else {
                PlaidConfig cfg;
                cfg.d = d;
                cfg.alpha = rat_from_decimal(alpha);
                cfg.seed = g.seed;
                cfg.jmax = jmax;
                auto smp = sample_plaid(cfg, jmax);
                mu = smp.mu;
                nu = smp.nu;
            }
            write_jsonl(os, mu);
            CsvWriter csv(g.path("random-sample-stats.csv"),
                          {"which", "l1", "l2_sq", "linf", "linf_punctured", "support", "radius"});
            for (const auto& [name, m] : {std::pair<const char*, const SparseMeasure&>{"mu", mu},
                                          {"nu", nu}}) {
                MeasureStats st = measure_stats(m);
                csv.row({name, rat_str(st.l1), rat_str(st.l2_sq), rat_str(st.linf),
                         rat_str(st.linf_punctured), std::to_string(st.support_size),
                         std::to_string(st.support_radius)});
            }
            g.manifest("random-sample", "{\"kind\":\"" + kind + "\"}");
        });
        random->get_subcommand("sweep")->callback([&]() {
            SpeckledConfig cfg;
            cfg.d = d;
            cfg.gamma = rat_from_decimal(gamma);
            cfg.seed = g.seed;
            cfg.jmax = jmax;
            std::vector<SparseMeasure> family;
            for (int j = jmin; j <= jmax; ++j) family.push_back(sample_speckled(cfg, j).mu);
            SparseMeasure f(d, "delta");
            f.set(Pt(d, 0), 1);
            std::vector<Rat> lambdas;
            for (int e = -10; e <= 0; ++e) lambdas.push_back(pow2q(e));
            auto rep = weak11_sweep(family, f, lambdas);
            CsvWriter csv(g.path("random-sweep.csv"), {"lambda", "count", "constant"});
            for (const auto& r : rep.rows)
                csv.row({rat_str(r.lambda), std::to_string(r.level_count), rat_str(r.constant)});
            g.manifest("random-sweep", "{\"jmin\":" + std::to_string(jmin) + "}");
        });
        random->get_subcommand("enumerate")->callback([&]() {
            SpeckledConfig cfg;
            cfg.d = d;
            cfg.gamma = rat_from_decimal(gamma);
            cfg.seed = g.seed;
            auto pts = enumerate_speckled(cfg, (size_t)trials * 100);
            CsvWriter csv(g.path("random-enumerate.csv"), {"k", "coords"});
            for (size_t i = 0; i < pts.size(); ++i) {
                std::string c;
                for (size_t a = 0; a < pts[i].size(); ++a)
                    c += (a ? ";" : "") + std::to_string(pts[i][a]);
                csv.row({std::to_string(i + 1), c});
            }
            g.manifest("random-enumerate", "{}");
        });
    }

    // ---------------- arith ----------------
    auto* arith = app.add_subcommand("arith", "arithmetic curve-set constructions");
    arith->require_subcommand(1);
    {
        static int64_t p = 7;
        static int m = 2, q = 1, d = 2, count = 8, blocks_n = 4;
        auto* sched = arith->add_subcommand("schedule", "prime schedules");
        sched->add_option("--count", count);
        sched->callback([&]() {
            auto s = prime_schedule_dyadic_half(count);
            CsvWriter csv(g.path("arith-schedule.csv"), {"k", "p"});
            for (size_t i = 0; i < s.p.size(); ++i)
                csv.row({std::to_string(i), std::to_string(s.p[i])});
            g.manifest("arith-schedule", "{\"count\":" + std::to_string(count) + "}");
        });
        auto* build = arith->add_subcommand("build", "curve set blocks");
        build->add_option("--d", d);
        build->add_option("--q", q);
        build->add_option("--blocks", blocks_n);
        build->callback([&]() {
            auto params = default_arith_params(d, q, blocks_n);
            CsvWriter csv(g.path("arith-build.csv"), {"k", "j", "coords"});
            for (int k = 0; k < blocks_n; ++k) {
                auto block = build_arith_block(params, k);
                for (size_t j = 0; j < block.size(); ++j) {
                    std::string c;
                    for (size_t a = 0; a < block[j].size(); ++a)
                        c += (a ? ";" : "") + std::to_string(block[j][a]);
                    csv.row({std::to_string(k), std::to_string(j), c});
                }
            }
            g.manifest("arith-build", "{\"d\":" + std::to_string(d) + ",\"q\":" + std::to_string(q) + "}");
        });
        auto* weil = arith->add_subcommand("weil", "Weil bound check");
        weil->add_option("--p", p);
        weil->add_option("--m", m);
        weil->callback([&]() {
            WeilReport rep = weil_check(p, m, g.threads);
            std::cout << "max=" << rep.max_nonzero << " bound=" << rep.bound
                      << (rep.pass ? " pass" : " FAIL") << "\n";
            CsvWriter csv(g.path("arith-weil.csv"), {"p", "m", "max_nonzero", "bound", "pass"});
            csv.row({std::to_string(p), std::to_string(m), CsvWriter::num(rep.max_nonzero),
                     CsvWriter::num(rep.bound), rep.pass ? "1" : "0"});
            size_t cells = 1;
            for (int i = 0; i < m; ++i) cells *= (size_t)p;
            if (cells <= 20000) {  // per-frequency magnitudes for small groups
                FiniteFieldFn hat = curve_measure(p, m).dft();
                CsvWriter tcsv(g.path("arith-weil-theta.csv"), {"theta_index", "magnitude"});
                for (size_t i = 0; i < hat.size(); ++i)
                    tcsv.row({std::to_string(i), CsvWriter::num(std::abs(hat[i]))});
            }
            if (!rep.pass) g.threshold_failed = true;
            g.manifest("arith-weil", "{\"p\":" + std::to_string(p) + ",\"m\":" + std::to_string(m) + "}");
        });
        auto* psi = arith->add_subcommand("psi", "smoothing psi-hat l1 stability");
        psi->callback([&]() {
            CsvWriter csv(g.path("arith-psi.csv"), {"p", "ratio", "d2l1", "xi0", "geom"});
            for (int64_t pp = 11; pp <= 199; ++pp) {
                if (!is_prime_u64((uint64_t)pp)) continue;
                auto rep = smoothing_psi_l1(pp, 1.0 / (2.0 * (double)pp));
                csv.row({std::to_string(pp), CsvWriter::num(rep.ratio_to_p),
                         CsvWriter::num(rep.delta2_phi_l1), CsvWriter::num(rep.xi0_term),
                         CsvWriter::num(rep.geom_factor)});
            }
            g.manifest("arith-psi", "{}");
        });
        auto* transfer = arith->add_subcommand("transfer", "Gamma operators");
        transfer->add_option("--p", p);
        transfer->add_option("--q", q);
        transfer->add_option("--d", d);
        transfer->callback([&]() {
            bool bij = freiman_bijective_check(p, q, d);
            bool maj = mu_triple_majorizes(p, q, d);
            Rat l1 = nu_triple_l1(p, q, d);
            auto fid = gamma_fourier_identity(std::min<int64_t>(p, 7), q, d, 50, g.seed);
            CsvWriter csv(g.path("arith-transfer.csv"),
                          {"p", "q", "d", "bijective", "majorizes", "nu3_l1", "fourier_gap"});
            csv.row({std::to_string(p), std::to_string(q), std::to_string(d), bij ? "1" : "0",
                     maj ? "1" : "0", rat_str(l1), CsvWriter::num(fid.max_gap)});
            if (!bij || !maj || fid.max_gap > 1e-9) g.threshold_failed = true;
            g.manifest("arith-transfer", "{\"p\":" + std::to_string(p) + "}");
        });
        auto* osc = arith->add_subcommand("osc", "oscillation profile");
        osc->add_option("--d", d);
        osc->add_option("--blocks", blocks_n);
        osc->callback([&]() {
            auto params = default_arith_params(d, 1, std::max(3, blocks_n));
            std::vector<int> bl;
            for (int i = 0; i < std::max(3, blocks_n); ++i) bl.push_back(i);
            auto rows = osc_supdiff_rows(params, bl, 64);
            CsvWriter csv(g.path("arith-osc.csv"), {"N", "supdiff", "max_grad_nu"});
            for (const auto& r : rows)
                csv.row({std::to_string(r.N), CsvWriter::num(r.sup_diff),
                         CsvWriter::num(r.max_grad_nu)});
            g.manifest("arith-osc", "{\"d\":" + std::to_string(d) + "}");
        });
        auto* product = arith->add_subcommand("product", "product construction checks");
        product->add_option("--m", m);
        product->callback([&]() {
            ProductWeilReport rep = product_weil_check({5, 7}, m);
            bool fact = product_factorization_check({5, 7, 11}, m, 100, g.seed);
            CsvWriter csv(g.path("arith-product.csv"),
                          {"max_all_nonzero", "bound", "per_pattern_pass", "factorization"});
            csv.row({CsvWriter::num(rep.max_all_nonzero), CsvWriter::num(rep.bound_all_nonzero),
                     rep.per_pattern_pass ? "1" : "0", fact ? "1" : "0"});
            if (!rep.per_pattern_pass || !fact) g.threshold_failed = true;
            g.manifest("arith-product", "{\"m\":" + std::to_string(m) + "}");
        });
    }

    // ---------------- group ----------------
    auto* group = app.add_subcommand("group", "group models and word-ball averages");
    group->require_subcommand(1);
    {
        static std::string gname = "heis3";
        static int nmax = 12, j = 4, seeds = 5;
        static std::string alpha = "0.8";
        for (auto* sc : {group->add_subcommand("ball", "word ball growth"),
                         group->add_subcommand("blocks", "S(k,r) block sequence"),
                         group->add_subcommand("random", "random measures"),
                         group->add_subcommand("ttstar", "TT* moment sweep"),
                         group->add_subcommand("gaps", "gap profile and thinning"),
                         group->add_subcommand("banach", "Banach density estimate")}) {
            sc->add_option("--group", gname);
            sc->add_option("--nmax", nmax);
            sc->add_option("--j", j);
            sc->add_option("--alpha", alpha);
            sc->add_option("--seeds", seeds);
        }
        group->get_subcommand("ball")->callback([&]() {
            auto rep = word_ball_growth(model_by_name(gname), nmax);
            CsvWriter csv(g.path("group-ball.csv"), {"N", "size", "ratio"});
            for (size_t N = 1; N < rep.sizes.size(); ++N)
                csv.row({std::to_string(N), std::to_string(rep.sizes[N]),
                         CsvWriter::num(rep.ratios[N - 1])});
            std::cout << "inferred degree " << rep.inferred_degree << "\n";
            g.manifest("group-ball", "{\"group\":\"" + gname + "\"}");
        });
        group->get_subcommand("blocks")->callback([&]() {
            GroupModel gm = model_by_name(gname);
            WordBalls balls = word_balls(gm, nmax);
            GroupBlockPlan plan;
            // simple admissible plan inside the computed balls
            plan.ell = {2, 3};
            plan.shifts = {balls.elements[balls.ball_size[1] - 1],
                           balls.elements[balls.ball_size[std::min(nmax, 6)] - 1]};
            CsvWriter csv(g.path("group-blocks.csv"), {"k", "r", "size", "diff", "ratio"});
            for (int k = 0; k < (int)plan.ell.size(); ++k)
                for (int r = 0; r <= (k + 1 < (int)plan.ell.size() ? plan.ell[k + 1] : 0); ++r) {
                    auto s = group_block_set(gm, plan, balls, k, r);
                    auto rep = group_tempelman(gm, s);
                    csv.row({std::to_string(k), std::to_string(r), std::to_string(rep.size),
                             std::to_string(rep.diff_size), rat_str(rep.ratio)});
                }
            g.manifest("group-blocks", "{\"group\":\"" + gname + "\"}");
        });
        group->get_subcommand("random")->callback([&]() {
            GroupModel gm = model_by_name(gname);
            WordBalls balls = word_balls(gm, 1 << j);
            auto s = sample_group_random(gm, balls, rat_from_decimal(alpha), j, g.seed);
            CsvWriter csv(g.path("group-random.csv"), {"j", "support", "radius", "nu_l1"});
            csv.row({std::to_string(j), std::to_string(s.r_support), std::to_string(s.R_radius),
                     rat_str(s.nu.l1())});
            g.manifest("group-random", "{\"group\":\"" + gname + "\",\"j\":" + std::to_string(j) + "}");
        });
        group->get_subcommand("ttstar")->callback([&]() {
            auto rows = ttstar_zd2_sweep(rat_from_decimal(alpha), std::max(2, j - 2), j, seeds,
                                         g.seed, g.threads);
            CsvWriter csv(g.path("group-ttstar.csv"), {"j", "mean_ratio", "seeds"});
            for (const auto& r : rows)
                csv.row({std::to_string(r.j), CsvWriter::num(r.mean_l2sq_ratio),
                         std::to_string(r.seeds)});
            g.manifest("group-ttstar", "{\"alpha\":\"" + alpha + "\"}");
        });
        group->get_subcommand("gaps")->callback([&]() {
            SpeckledConfig cfg;
            cfg.d = 2;
            cfg.gamma = rat_from_decimal(alpha);
            cfg.seed = g.seed;
            auto pts = enumerate_speckled(cfg, (size_t)seeds * 1000);
            std::vector<GroupModel::El> seq;
            for (const auto& p : pts) seq.push_back({p[0], p[1], 0});
            auto prof = gap_profile_and_thin(GroupModel::zd(2), seq, {2, 3, 4, 6, 8}, Rat(1, 10));
            CsvWriter csv(g.path("group-gaps.csv"), {"j", "M", "beta", "chosen_M"});
            for (size_t jj = 0; jj < prof.beta.size(); ++jj)
                for (size_t mi = 0; mi < prof.Ms.size(); ++mi)
                    csv.row({std::to_string(jj), std::to_string(prof.Ms[mi]),
                             rat_str(prof.beta[jj][mi]), std::to_string(prof.schedule[jj])});
            g.manifest("group-gaps", "{}");
        });
        group->get_subcommand("banach")->callback([&]() {
            GroupModel gm = model_by_name(gname);
            WordBalls balls = word_balls(gm, nmax);
            SpeckledConfig cfg;
            cfg.d = 2;
            cfg.gamma = rat_from_decimal(alpha);
            cfg.seed = g.seed;
            std::vector<GroupModel::El> F;
            if (gm.kind == GroupKind::Zd && gm.zd_dim == 2) {
                for (const auto& p : enumerate_speckled(cfg, 2000)) F.push_back({p[0], p[1], 0});
            } else {
                for (size_t i = 0; i < balls.elements.size(); i += 7) F.push_back(balls.elements[i]);
            }
            std::vector<int> Ns;
            for (int N = 2; 2 * N <= nmax; N *= 2) Ns.push_back(N);
            auto rows = banach_density_estimate(gm, balls, F, Ns, 50, g.seed);
            CsvWriter csv(g.path("group-banach.csv"), {"N", "ratio"});
            for (const auto& r : rows) csv.row({std::to_string(r.N), rat_str(r.ratio)});
            g.manifest("group-banach", "{\"group\":\"" + gname + "\"}");
        });
    }

    // ---------------- dyn ----------------
    auto* dyn = app.add_subcommand("dyn", "model actions and averages");
    dyn->require_subcommand(1);
    {
        static int blocks_n = 10;
        auto* run = dyn->add_subcommand("run", "averages along the arithmetic set");
        run->add_option("--blocks", blocks_n);
        run->callback([&]() {
            auto params = default_arith_params(2, 1, blocks_n);
            int64_t N = 0;
            std::vector<int64_t> schedule;
            for (int64_t p : params.primes.p) {
                N += p;
                schedule.push_back(N);
            }
            auto en = arith_enumeration(params, (size_t)N);
            TrigObservable f;
            f.freq = {Pt{1, 0}};
            f.cos_coef = {1.0};
            f.sin_coef = {0.0};
            auto rows = evaluate_average_torus(default_torus_rotation(), f, {0.1, 0.2}, en, schedule);
            CsvWriter csv(g.path("dyn-run.csv"), {"N", "A_N", "deviation"});
            for (const auto& r : rows)
                csv.row({std::to_string(r.N), CsvWriter::num(r.value), CsvWriter::num(r.deviation)});
            g.manifest("dyn-run", "{\"blocks\":" + std::to_string(blocks_n) + "}");
        });
        auto* maximal = dyn->add_subcommand("maximal", "maximal function window");
        maximal->callback([&]() {
            SpeckledConfig cfg;
            cfg.d = 2;
            cfg.seed = g.seed;
            std::vector<SparseMeasure> family;
            for (int j = 2; j <= 5; ++j) family.push_back(sample_speckled(cfg, j).mu);
            SparseMeasure f(2, "delta");
            f.set({0, 0}, 1);
            std::vector<Rat> lambdas;
            for (int e = -12; e <= 0; ++e) lambdas.push_back(pow2q(e));
            auto rep = weak11_sweep(family, f, lambdas);
            CsvWriter csv(g.path("dyn-maximal.csv"), {"lambda", "count", "constant"});
            for (const auto& r : rep.rows)
                csv.row({rat_str(r.lambda), std::to_string(r.level_count), rat_str(r.constant)});
            g.manifest("dyn-maximal", "{}");
        });
        auto* transfer = dyn->add_subcommand("transfer", "Calderon transference check");
        transfer->callback([&]() {
            FiniteTorusShift act;
            act.d = 2;
            act.D = 2;
            act.L = 128;
            act.shift = {Pt{1, 0}, Pt{0, 1}};
            CellObservable f;
            f.corner = {0, 0};
            f.extent = {1, 1};
            std::vector<SparseMeasure> family;
            for (int r : {0, 1}) {
                SparseMeasure mu(2, "ball");
                int64_t cells = (2 * r + 1) * (2 * r + 1);
                for (int64_t x = -r; x <= r; ++x)
                    for (int64_t y = -r; y <= r; ++y) mu.set({x, y}, Rat(1, cells));
                family.push_back(mu);
            }
            auto rep = transference_check(act, f, Pt{3, 7}, family, 16,
                                          {Rat(1, 1024), Rat(1, 64), Rat(1, 4)});
            CsvWriter csv(g.path("dyn-transfer.csv"),
                          {"pointwise_identity", "level_sets_ok", "edge_factor"});
            csv.row({rep.pointwise_identity ? "1" : "0", rep.level_sets_ok ? "1" : "0",
                     CsvWriter::num(rep.edge_factor)});
            if (!rep.pointwise_identity || !rep.level_sets_ok) g.threshold_failed = true;
            g.manifest("dyn-transfer", "{}");
        });
    }

    // ---------------- all-acceptance ----------------
    auto* acc = app.add_subcommand("all-acceptance", "run the acceptance suite");
    static std::string profile = "full";
    acc->add_option("--profile", profile, "full|smoke");
    acc->callback([&]() {
        AcceptanceOptions opt;
        opt.smoke = (profile == "smoke");
        opt.threads = g.threads;
        opt.seed = g.seed;
        opt.out_dir = g.out;
        auto rows = run_acceptance(opt);
        int fails = print_acceptance(rows);
        g.manifest("all-acceptance", "{\"profile\":\"" + profile + "\"}");
        if (fails > 0) g.threshold_failed = true;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g.threshold_failed ? 1 : 0;
}
