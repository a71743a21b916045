#pragma once

#include <CLI11.hpp>
#include <chrono>

#include "zerosum/cache.hpp"
#include "zerosum/verify.hpp"

namespace zerosum::cli {

/// Subset syntax: comma-separated elements; an element is a coordinate
/// tuple "(a,b,...)", a bare residue for cyclic groups, or "g" / "<k>g"
/// sugar for (multiples of) the first standard generator in cyclic groups.
inline std::vector<GroupElement> parse_subset(const FiniteAbelianGroup& g,
                                              const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    tokens.push_back(cur);
    if (depth != 0) throw parse_error("unbalanced parentheses in subset '" + text + "'");

    std::vector<GroupElement> out;
    std::set<GroupElement> seen;
    for (auto& tok : tokens) {
        if (tok.empty()) throw parse_error("empty element in subset '" + text + "'");
        GroupElement e;
        if (tok.front() == '(') {
            if (tok.back() != ')') throw parse_error("malformed tuple '" + tok + "'");
            std::vector<Int> coords;
            std::string body = tok.substr(1, tok.size() - 2), num;
            for (size_t i = 0; i <= body.size(); ++i) {
                if (i == body.size() || body[i] == ',') {
                    if (num.empty()) throw parse_error("malformed tuple '" + tok + "'");
                    coords.push_back(std::stoll(num));
                    num.clear();
                } else if (std::isdigit(static_cast<unsigned char>(body[i])) ||
                           body[i] == '-') {
                    num += body[i];
                } else {
                    throw parse_error("malformed tuple '" + tok + "'");
                }
            }
            e = g.make(std::move(coords));
        } else {
            std::string digits = tok;
            bool generator = false;
            if (digits.back() == 'g') {
                generator = true;
                digits.pop_back();
                if (digits.empty()) digits = "1";
            }
            for (char c : digits)
                if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-')
                    throw parse_error("malformed element '" + tok + "'");
            if (g.rank() != 1)
                throw parse_error("element '" + tok +
                                  "' needs tuple syntax for groups of rank != 1");
            (void)generator;  // k and kg mean the same residue in a cyclic group
            e = g.make({std::stoll(digits)});
        }
        if (seen.insert(e).second) out.push_back(e);
    }
    return out;
}

namespace detail_cli {

struct Common {
    std::string format = "human";
    std::string cache_dir;
    uint64_t budget = 100'000'000;
    int jobs = 1;
    uint64_t seed = 0;
    Int max_order = 0;  // 0: per-command default

    bool machine() const { return format == "machine"; }
    SweepOptions sweep() const {
        SweepOptions s;
        if (max_order > 0) {
            s.max_group_order = std::max(s.max_group_order, max_order);
            s.max_cyclic_order = std::max(s.max_cyclic_order, max_order);
        }
        s.node_budget = budget;
        s.jobs = jobs;
        return s;
    }
    VerifyOptions verify(Int default_order) const {
        VerifyOptions v;
        v.max_order = max_order > 0 ? max_order : default_order;
        v.jobs = jobs;
        v.node_budget = budget;
        v.seed = seed;
        return v;
    }
};

inline void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "Report format")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    sub->add_option("--cache", c.cache_dir, "Atom cache directory")
        ->envname("ZEROSUM_CACHE");
    sub->add_option("--budget", c.budget, "Enumeration node budget")
        ->envname("ZEROSUM_BUDGET")
        ->capture_default_str();
    sub->add_option("--jobs", c.jobs, "Parallel sweep width")->capture_default_str();
    sub->add_option("--seed", c.seed, "Seed for randomized property sampling")
        ->capture_default_str();
    sub->add_option("--max-order", c.max_order,
                    "Largest group order to sweep (0: command default)");
}

inline AtomSet atoms_for(const Common& c, const GroupTables& tables, uint64_t mask,
                         std::ostream& err) {
    EnumerationConfig cfg{c.budget};
    if (!c.cache_dir.empty())
        return load_or_compute(c.cache_dir, tables, mask, cfg, &err);
    return enumerate_atoms(tables, mask, cfg);
}

inline uint64_t mask_of(const FiniteAbelianGroup& g,
                        const std::vector<GroupElement>& subset) {
    uint64_t m = 0;
    for (const auto& e : subset) m |= uint64_t(1) << g.index_of(e);
    return m;
}

inline std::vector<GroupElement> default_subset(const FiniteAbelianGroup& g) {
    std::vector<GroupElement> out;
    for (const auto& e : g.enumerate_elements())
        if (!e.is_zero()) out.push_back(e);
    return out;
}

inline json atom_list_json(const AtomSet& a) {
    json arr = json::array();
    for (size_t i = 0; i < a.size(); ++i) {
        json rec;
        rec["exponents"] = a.atoms[i];
        rec["sequence"] = a.atom_sequence(i).str();
        rec["length"] = a.lengths[i];
        rec["cross_number"] = a.cross_numbers[i].str();
        arr.push_back(std::move(rec));
    }
    return arr;
}

inline json subset_json(const std::vector<GroupElement>& subset) {
    json arr = json::array();
    for (const auto& e : subset) arr.push_back(e.str());
    return arr;
}

inline void add_delta_star_verdicts(Report& rep, const DeltaStarReport& r) {
    auto add = [&](const char* check, bool ok, bool applicable, const char* src) {
        VerdictRecord v;
        v.check = check;
        v.subject = r.group.name();
        v.ok = ok;
        v.applicable = applicable;
        v.source = src;
        rep.add(v);
    };
    const auto& v = r.verdicts;
    add("thm1.1.lower", v.lower_inclusion, true, source::formula);
    add("thm1.1.upper", v.upper_inclusion, true, source::formula);
    add("thm1.1.part1", v.part1_holds, v.part1_applicable, source::formula);
    add("thm1.1.equivalence", v.equivalence_holds, true, source::computed);
    add("thm1.1.one-present", v.one_present, true, source::computed);
    add("thm1.1.order-gaps", v.element_order_gaps, true, source::computed);
    add("thm1.1.rank-interval", v.rank_interval_present, r.group.rank() >= 2,
        source::computed);
    add("prop2.3.max", v.max_formula_m && v.max_formula_rank, true, source::formula);
    add("prop2.3.pgroup-m", v.m_pgroup_identity, is_p_group(r.group), source::formula);
    add("prop3.7", v.m_bound, true, source::formula);
}

inline void add_delta_star_values(Report& rep, const DeltaStarReport& r) {
    rep.add_value("group", r.group.name());
    rep.add_value("delta_star", to_json(r.delta_star));
    rep.add_value("m", r.m.value);
    rep.add_value("m_witness", r.m.witness);
    rep.add_value("davenport", r.davenport_full);
    rep.add_value("lower_bound_set", to_json(r.lower_bound_set), source::formula);
    rep.add_value("upper_bound_set", to_json(r.upper_bound_set), source::formula);
    rep.add_value("delta1_inner", to_json(r.delta1_inner), source::sandwich);
    rep.add_value("delta1_outer", to_json(r.delta1_outer), source::sandwich);
    rep.add_value("orbit_representatives", r.orbit_rep_count);
    rep.add_value("subsets", r.subset_count);
}

}  // namespace detail_cli

/// Entry point shared by the binary and the tests. Returns the process
/// exit status: 0 all green, 1 at least one red verdict, 2 usage or
/// resource errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail_cli;
    CLI::App app{"zero-sum sequence laboratory over finite abelian groups"};
    app.require_subcommand(1);

    Common common;
    std::string group_arg, group_arg2, subset_arg, what_arg;

    auto* atoms_cmd = app.add_subcommand("atoms", "List the minimal zero-sum sequences");
    atoms_cmd->add_option("group", group_arg)->required();
    atoms_cmd->add_option("--subset", subset_arg, "Subset (default: all nonzero elements)");
    add_common(atoms_cmd, common);

    auto* dav_cmd = app.add_subcommand("davenport", "Longest minimal zero-sum sequence");
    dav_cmd->add_option("group", group_arg)->required();
    dav_cmd->add_option("--subset", subset_arg);
    add_common(dav_cmd, common);

    auto* md_cmd = app.add_subcommand("min-delta", "Minimal distance of a subset");
    md_cmd->add_option("group", group_arg)->required();
    md_cmd->add_option("--subset", subset_arg);
    add_common(md_cmd, common);

    auto* ds_cmd = app.add_subcommand("delta-star", "Set of minimal distances of a group");
    ds_cmd->add_option("group", group_arg)->required();
    add_common(ds_cmd, common);

    auto* m_cmd = app.add_subcommand("m", "Largest minimal distance over LCN subsets");
    m_cmd->add_option("group", group_arg)->required();
    add_common(m_cmd, common);

    auto* verify_cmd = app.add_subcommand("verify", "Run a named verification sweep");
    verify_cmd->add_option("what", what_arg)
        ->required()
        ->check(CLI::IsMember({"lemma2.2", "lemma3.1", "lemma3.3", "lemma3.5",
                               "audit3.4-3.6", "prop2.3", "prop3.7", "thm1.1",
                               "thm1.2-chain"}));
    add_common(verify_cmd, common);

    auto* dist_cmd = app.add_subcommand("distinguish", "Invariant recovery chain on a pair");
    dist_cmd->add_option("group", group_arg)->required();
    dist_cmd->add_option("other", group_arg2)->required();
    add_common(dist_cmd, common);

    auto* census_cmd = app.add_subcommand("census", "Pairwise recovery chain census");
    add_common(census_cmd, common);

    auto* report_cmd = app.add_subcommand("report", "Full per-group report");
    report_cmd->add_option("group", group_arg)->required();
    add_common(report_cmd, common);

    std::vector<const char*> argv;
    argv.push_back("zerosum");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Report rep;
    for (const auto& a : args) rep.command += (rep.command.empty() ? "" : " ") + a;
    auto t0 = std::chrono::steady_clock::now();

    try {
        if (*atoms_cmd || *dav_cmd || *md_cmd) {
            FiniteAbelianGroup g = parse_group(group_arg);
            auto subset = subset_arg.empty() ? default_subset(g) : parse_subset(g, subset_arg);
            if (subset.empty()) throw parse_error("empty subset");
            GroupTables tables(g);
            AtomSet atoms = atoms_for(common, tables, mask_of(g, subset), err);
            rep.add_value("group", g.name());
            rep.add_value("subset", subset_json(atoms.elements));
            rep.add_value("subset_mask", detail::hex64(atoms.subset_mask()));
            if (*atoms_cmd) {
                rep.add_value("atom_count", atoms.size());
                rep.add_value("davenport", atoms.davenport);
                rep.add_value("atoms", atom_list_json(atoms));
            } else if (*dav_cmd) {
                rep.add_value("davenport", atoms.davenport);
            } else {
                auto d = min_delta_lattice(atoms);
                rep.add_value("min_delta", d ? json(*d) : json(nullptr));
                rep.add_value("half_factorial", !d.has_value());
            }
        } else if (*ds_cmd) {
            auto r = delta_star_report(parse_group(group_arg), common.sweep());
            add_delta_star_values(rep, r);
            add_delta_star_verdicts(rep, r);
        } else if (*m_cmd) {
            FiniteAbelianGroup g = parse_group(group_arg);
            auto m = m_of_group(g, EnumerationConfig{common.budget});
            rep.add_value("group", g.name());
            rep.add_value("m", m.value);
            rep.add_value("m_witness", m.witness);
        } else if (*verify_cmd) {
            std::vector<VerdictRecord> records;
            if (what_arg == "lemma2.2")
                records = verify_half_factorial_criterion(common.verify(8));
            else if (what_arg == "lemma3.1")
                records = verify_valuation_chain(common.verify(8));
            else if (what_arg == "lemma3.3")
                records = verify_small_support_atoms(common.verify(8));
            else if (what_arg == "lemma3.5")
                records = verify_cross_integrality(common.verify(12));
            else if (what_arg == "audit3.4-3.6")
                records = verify_bound_audits(common.verify(12));
            else if (what_arg == "prop2.3")
                records = verify_max_identities(common.verify(16));
            else if (what_arg == "prop3.7")
                records = verify_m_bound(common.verify(16));
            else if (what_arg == "thm1.1")
                records = verify_structure(common.verify(16));
            else
                records = verify_recovery_census(common.verify(12));
            for (auto& v : records) rep.add(std::move(v));
        } else if (*dist_cmd) {
            SweepOptions s = common.sweep();
            FiniteAbelianGroup g1 = parse_group(group_arg), g2 = parse_group(group_arg2);
            s.max_group_order = std::max({s.max_group_order, g1.order(), g2.order()});
            s.max_cyclic_order = std::max(s.max_cyclic_order, s.max_group_order);
            auto t1 = invariants(g1, s), t2 = invariants(g2, s);
            auto v = distinguish(t1, t2);
            rep.add_value("group", g1.name());
            rep.add_value("other", g2.name());
            rep.add_value("distinguished", v.distinguished);
            rep.add_value("reason", v.reason);
            rep.add_value("undecidable", v.undecidable, source::sandwich);
            rep.add_value("exp_k_recovered", v.exp_k_recovered, source::sandwich);
            if (v.exp_k_recovered) {
                rep.add_value("exp_matches", v.exp_matches);
                rep.add_value("k_matches", v.k_matches);
            }
            if (v.rank_recovery_applicable) rep.add_value("rank_matches", v.rank_matches);
            if (v.iso_recovery_applicable)
                rep.add_value("iso_concluded", v.iso_concluded);
            VerdictRecord self;
            self.check = "thm1.2-chain.self-facts";
            self.subject = g1.name();
            self.ok = chain_self_facts(t1);
            rep.add(self);
        } else if (*census_cmd) {
            Int order = common.max_order > 0 ? common.max_order : 12;
            VerifyOptions vo = common.verify(order);
            auto table = census(order, vo.sweep(), common.jobs);
            rep.add_value("max_order", table.max_order);
            rep.add_value("separated_pairs", table.separated_count);
            rep.add_value("unseparated_pairs", table.unseparated_count);
            rep.add_value("excluded_groups", table.excluded_count);
            for (const auto& row : table.rows) {
                VerdictRecord v;
                v.check = row.left_hypotheses_ok ? "census.pair" : "census.excluded";
                v.subject = row.left + (row.right == "*" ? "" : " vs " + row.right);
                v.applicable = row.left_hypotheses_ok;
                v.ok = row.ok;
                if (row.left_hypotheses_ok) {
                    v.detail["separated"] = row.verdict.distinguished;
                    if (!row.verdict.reason.empty()) v.detail["reason"] = row.verdict.reason;
                    v.detail["differing_exp_or_mult"] = row.differing_exp_or_mult;
                    v.source = source::sandwich;
                }
                rep.add(std::move(v));
            }
        } else if (*report_cmd) {
            FiniteAbelianGroup g = parse_group(group_arg);
            SweepOptions s = common.sweep();
            s.keep_subset_table = true;
            auto r = delta_star_report(g, s);
            add_delta_star_values(rep, r);
            GroupTables tables(g);
            AtomSet full_all =
                enumerate_atoms(tables, (uint64_t(1) << g.order()) - 1,
                                EnumerationConfig{common.budget});
            Int hf = 0, lcn_nhf = 0, minimal = 0;
            json table_json = json::array();
            for (const auto& row : r.table) {
                if (row.cls.half_factorial) ++hf;
                if (!row.cls.half_factorial && row.cls.lcn) ++lcn_nhf;
                if (row.cls.minimal_non_half_factorial) ++minimal;
                json jr;
                jr["mask"] = detail::hex64(row.cls.mask);
                jr["orbit_size"] = row.orbit_size;
                jr["half_factorial"] = row.cls.half_factorial;
                jr["lcn"] = row.cls.lcn;
                jr["minimal_non_half_factorial"] = row.cls.minimal_non_half_factorial;
                jr["min_delta"] =
                    row.cls.min_delta ? json(*row.cls.min_delta) : json(nullptr);
                jr["atoms"] = row.cls.atom_count;
                jr["davenport"] = row.cls.davenport;
                table_json.push_back(std::move(jr));
            }
            rep.add_value("half_factorial_reps", hf);
            rep.add_value("lcn_non_half_factorial_reps", lcn_nhf);
            rep.add_value("minimal_non_half_factorial_reps", minimal);
            if (common.machine()) rep.add_value("subset_table", table_json);
            add_delta_star_verdicts(rep, r);
            // per-subset audits over the orbit representatives
            bool audits_ok = true;
            Int audit_cases = 0;
            for (const auto& row : r.table) {
                auto ci = audit_cross_integrality(tables, full_all, row.cls.mask);
                auto mb = audit_min_delta_bounds(tables, full_all, row.cls.mask);
                for (const AuditRecord* a :
                     {&ci.main, &mb.strict_bound, &mb.relaxed_bound, &mb.lcn_bound}) {
                    if (a->applicable) {
                        ++audit_cases;
                        if (!a->holds) audits_ok = false;
                    }
                }
                if (!ci.note_implies_conditions) audits_ok = false;
            }
            VerdictRecord audits;
            audits.check = "subset-audits";
            audits.subject = g.name();
            audits.ok = audits_ok;
            audits.detail["cases"] = audit_cases;
            rep.add(audits);
        }
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const sweep_limit_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }

    rep.timing_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    rep.render(out, common.machine());
    return rep.any_red() ? 1 : 0;
}

}  // namespace zerosum::cli
