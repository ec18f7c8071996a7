#include "jacstab/cli.hpp"

#include <fstream>
#include <random>

#include <CLI11.hpp>

#include "jacstab/json_io.hpp"

namespace jacstab {

namespace {

ordered_json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

std::string deg_str(const DualGraph& g, const CombSheaf& i) {
    std::string out;
    for (int v : i.ambient.members()) {
        if (!out.empty()) out += " ";
        out += g.vertex(v).id + "=" + std::to_string(i.deg[static_cast<size_t>(v)]);
    }
    return out;
}

std::string edges_str(const DualGraph& g, EdgeSet s) {
    std::string out = "[";
    bool first = true;
    for (int e : s.members()) {
        if (!first) out += ",";
        out += g.edge_to_string(e);
        first = false;
    }
    return out + "]";
}

Predicate parse_predicate(const std::string& name) {
    if (name == "semistable") return Predicate::Semistable;
    if (name == "stable") return Predicate::Stable;
    if (name == "quasistable") return Predicate::Quasistable;
    if (name == "w-quasistable") return Predicate::WQuasistable;
    if (name == "p-quasistable") return Predicate::PQuasistable;
    throw InputError("unknown predicate '" + name + "'");
}

EnumPredicate parse_enum_predicate(const std::string& name) {
    if (name == "semistable") return EnumPredicate::Semistable;
    if (name == "stable") return EnumPredicate::Stable;
    if (name == "quasistable") return EnumPredicate::Quasistable;
    if (name == "w-quasistable") return EnumPredicate::WQuasistable;
    if (name == "sigma-quasistable") return EnumPredicate::SigmaQuasistable;
    if (name == "simple-semistable") return EnumPredicate::SimpleSemistable;
    throw InputError("unknown enumeration predicate '" + name + "'");
}

void print_report_row(const DualGraph& g, const StabilityReport& rep, const std::string& label,
                      std::ostream& out) {
    out << label << ": " << (rep.verdict ? "true" : "false") << "\n";
    if (!rep.verdict && !rep.violations.empty())
        out << "  blocked by " << g.subcurve_to_string(rep.violations.front().first) << " (beta "
            << rep.violations.front().second.to_string() << ")\n";
    if (rep.verdict && rep.predicate == Predicate::Quasistable) {
        out << "  base vertices:";
        for (int v : rep.qualifying) out << " " << g.vertex(v).id;
        out << "\n";
    }
}

void emit(const ordered_json& doc, std::ostream& out) { out << doc.dump(2) << "\n"; }

// Connected multigraph with 2..5 vertices: a random tree plus up to three
// extra edges, loops allowed.
DualGraph random_graph(std::mt19937_64& rng) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v)
        vs.push_back({"v" + std::to_string(v + 1), static_cast<long long>(rng() % 2)});
    std::vector<std::pair<std::string, std::string>> edges;
    for (int v = 1; v < n; ++v) {
        int parent = static_cast<int>(rng() % static_cast<uint64_t>(v));
        edges.emplace_back(vs[static_cast<size_t>(parent)].id, vs[static_cast<size_t>(v)].id);
    }
    int extra = static_cast<int>(rng() % 4);
    for (int t = 0; t < extra; ++t) {
        int a = static_cast<int>(rng() % static_cast<uint64_t>(n));
        int b = static_cast<int>(rng() % static_cast<uint64_t>(n));
        edges.emplace_back(vs[static_cast<size_t>(a)].id, vs[static_cast<size_t>(b)].id);
    }
    return DualGraph(std::move(vs), std::move(edges));
}

long long pick_small(std::mt19937_64& rng) { return static_cast<long long>(rng() % 7) - 3; }

int run_selftest(uint64_t seed, std::ostream& out) {
    std::mt19937_64 rng(seed);
    const int n_graphs = 20;
    long long submod = 0, pruned = 0, reductions = 0, ids = 0;
    for (int gi = 0; gi < n_graphs; ++gi) {
        DualGraph g = random_graph(rng);
        int n = g.n_vertices();
        uint64_t vmask = g.full().bits();

        std::vector<long long> d(static_cast<size_t>(n));
        for (auto& x : d) x = pick_small(rng);
        EdgeSet s(rng() & g.all_edges().bits());
        CombSheaf i = make_sheaf(g, g.full(), s, d);

        auto chi_of = [&](Subcurve y) { return y.empty() ? 0 : restricted_euler(g, i, y); };
        for (int t = 0; t < 20; ++t) {
            Subcurve y(rng() & vmask), z(rng() & vmask);
            if (chi_of(y | z) + chi_of(y & z) > chi_of(y) + chi_of(z))
                throw InvariantError("selftest: submodularity failed on " + g.subcurve_to_string(y) +
                                     " and " + g.subcurve_to_string(z));
            ++submod;
        }

        long long rank = 1 + static_cast<long long>(rng() % 2);
        std::vector<long long> e(static_cast<size_t>(n));
        long long head = 0;
        for (int v = 0; v + 1 < n; ++v) {
            e[static_cast<size_t>(v)] = pick_small(rng);
            head += e[static_cast<size_t>(v)];
        }
        e[static_cast<size_t>(n - 1)] = checked_sub(checked_mul(rank, euler_char(g, i)), head);
        Polarization pol(g, rank, e);
        if (semistable_pruned(g, i, pol) != is_semistable(g, i, pol).verdict)
            throw InvariantError("selftest: pruned semistability scan disagrees with the full scan");
        ++pruned;

        CombSheaf start = make_invertible(g, d);
        std::vector<long long> e2(static_cast<size_t>(n));
        head = 0;
        for (int v = 0; v + 1 < n; ++v) {
            e2[static_cast<size_t>(v)] = pick_small(rng);
            head += e2[static_cast<size_t>(v)];
        }
        e2[static_cast<size_t>(n - 1)] = checked_sub(euler_char(g, start), head);
        Polarization pol2(g, 1, e2);

        Subcurve z(1 + rng() % (vmask - 1)); // nonempty proper
        z = z & g.full();
        if (z.empty() || z == g.full()) z = g.singleton(0);
        CombSheaf sibling = z == g.full() ? start : twist(g, start, z);
        if (class_id(g, start) != class_id(g, sibling))
            throw InvariantError("selftest: twisting changed the class id");
        ++ids;

        int w = static_cast<int>(rng() % static_cast<uint64_t>(n));
        CombSheaf rep1 = sigma_reduce(g, semistable_reduce(g, start, pol2).final, pol2, w).final;
        CombSheaf rep2 = sigma_reduce(g, semistable_reduce(g, sibling, pol2).final, pol2, w).final;
        if (!(rep1 == rep2))
            throw InvariantError("selftest: sigma reduction depends on the start within a class");
        reductions += 2;
    }
    out << "seed: " << seed << "\n";
    out << "graphs: " << n_graphs << "\n";
    out << "checks: submodularity=" << submod << " pruned=" << pruned << " reductions=" << reductions
        << " ids=" << ids << "\n";
    out << "selftest passed\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"stability of rank-1 sheaf classes on nodal curves, via dual graphs"};
    app.name("jacstab");
    app.require_subcommand(1);

    std::string graph_path, pol_path, sheaf_path, seshadri_path, parts_path;
    std::string format = "table", expect, w_id, mark_id, sigma_arg, pred_name = "semistable";
    std::string rule_name = "minlex";
    long long chi_flag = 0, jobs = 1;
    uint64_t seed = 1;
    bool invertible_only = false, with_jh_classes = false;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };

    CLI::App* c_check = app.add_subcommand("check", "evaluate the stability predicates");
    c_check->add_option("--graph", graph_path)->required();
    c_check->add_option("--pol", pol_path)->required();
    c_check->add_option("--sheaf", sheaf_path)->required();
    c_check->add_option("--w", w_id, "vertex id for w-quasistability");
    c_check->add_option("--mark", mark_id, "marking id for p-quasistability");
    c_check->add_option("--expect", expect, "exit 1 unless this predicate holds");
    add_format(c_check);

    CLI::App* c_jh = app.add_subcommand("jh", "filtration by stable pieces and its graded class");
    c_jh->add_option("--graph", graph_path)->required();
    c_jh->add_option("--pol", pol_path)->required();
    c_jh->add_option("--sheaf", sheaf_path)->required();
    c_jh->add_option("--rule", rule_name, "tie-break among minimal tight subcurves")
        ->check(CLI::IsMember({"minlex", "maxlex"}));
    add_format(c_jh);

    CLI::App* c_construct = app.add_subcommand("construct", "glue stable parts into a w-quasistable class");
    c_construct->add_option("--graph", graph_path)->required();
    c_construct->add_option("--pol", pol_path)->required();
    c_construct->add_option("--parts", parts_path)->required();
    c_construct->add_option("--w", w_id)->required();
    add_format(c_construct);

    CLI::App* c_reduce = app.add_subcommand("reduce", "twist into the semistable region");
    c_reduce->add_option("--graph", graph_path)->required();
    c_reduce->add_option("--pol", pol_path)->required();
    c_reduce->add_option("--sheaf", sheaf_path)->required();
    c_reduce->add_option("--sigma", sigma_arg, "mark=<id>: continue to the quasistable representative");
    add_format(c_reduce);

    CLI::App* c_enum = app.add_subcommand("enumerate", "list classes of one predicate");
    c_enum->add_option("--graph", graph_path)->required();
    c_enum->add_option("--pol", pol_path)->required();
    c_enum->add_option("--pred", pred_name, "predicate to enumerate");
    CLI::Option* enum_chi = c_enum->add_option("--chi", chi_flag, "cross-check against the polarization target");
    c_enum->add_option("--w", w_id);
    c_enum->add_option("--mark", mark_id);
    c_enum->add_flag("--invertible-only", invertible_only);
    c_enum->add_option("--jobs", jobs);
    add_format(c_enum);

    CLI::App* c_count = app.add_subcommand("count", "count classes of one predicate");
    c_count->add_option("--graph", graph_path)->required();
    c_count->add_option("--pol", pol_path)->required();
    c_count->add_option("--pred", pred_name);
    CLI::Option* count_chi = c_count->add_option("--chi", chi_flag);
    c_count->add_option("--w", w_id);
    c_count->add_option("--mark", mark_id);
    c_count->add_flag("--invertible-only", invertible_only);
    c_count->add_flag("--jh-classes", with_jh_classes, "also count graded classes (semistable only)");
    c_count->add_option("--jobs", jobs);
    add_format(c_count);

    CLI::App* c_convert = app.add_subcommand("convert", "seshadri weights to an integer polarization");
    c_convert->add_option("--graph", graph_path)->required();
    c_convert->add_option("--seshadri", seshadri_path)->required();
    add_format(c_convert);

    CLI::App* c_oracle = app.add_subcommand("oracle", "independent graph invariants");
    c_oracle->add_option("--graph", graph_path)->required();
    add_format(c_oracle);

    CLI::App* c_selftest = app.add_subcommand("selftest", "randomized property drivers");
    c_selftest->add_option("--seed", seed);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(c_selftest)) return run_selftest(seed, out);

        DualGraph g = parse_graph(load_json(graph_path));

        if (app.got_subcommand(c_oracle)) {
            std::optional<long long> cut = g.min_cut();
            if (format == "json") {
                ordered_json doc;
                doc["min_cut"] = cut ? ordered_json(*cut) : ordered_json(nullptr);
                doc["spanning_trees"] = spanning_tree_count(g);
                emit(doc, out);
            } else {
                out << "min_cut: " << (cut ? std::to_string(*cut) : "inf") << "\n";
                out << "spanning_trees: " << spanning_tree_count(g) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(c_convert)) {
            Polarization pol = parse_seshadri(g, load_json(seshadri_path));
            if (format == "json") {
                emit(render_polarization(g, pol), out);
            } else {
                out << "rank: " << pol.rank() << "\n" << "weights:";
                for (int v = 0; v < g.n_vertices(); ++v)
                    out << " " << g.vertex(v).id << "=" << pol.weight(v);
                out << "\n" << "target chi: " << pol.target_chi() << "\n";
            }
            return 0;
        }

        Polarization pol = parse_polarization(g, load_json(pol_path));

        if (app.got_subcommand(c_check)) {
            CombSheaf i = parse_sheaf(g, load_json(sheaf_path));
            std::vector<StabilityReport> reports;
            std::vector<std::string> labels;
            reports.push_back(is_semistable(g, i, pol));
            labels.push_back("semistable");
            reports.push_back(is_stable(g, i, pol));
            labels.push_back("stable");
            reports.push_back(is_quasistable(g, i, pol));
            labels.push_back("quasistable");
            if (!w_id.empty()) {
                reports.push_back(is_W_quasistable(g, i, pol, g.vertex_index(w_id)));
                labels.push_back("w-quasistable[" + w_id + "]");
            }
            if (!mark_id.empty()) {
                reports.push_back(is_p_quasistable(g, i, pol, mark_id));
                labels.push_back("p-quasistable[" + mark_id + "]");
            }
            if (format == "json") {
                ordered_json doc;
                ordered_json arr = ordered_json::array();
                for (const StabilityReport& rep : reports)
                    arr.push_back(render_report(g, rep, rep.predicate == Predicate::PQuasistable ? mark_id : ""));
                doc["reports"] = arr;
                emit(doc, out);
            } else {
                for (size_t k = 0; k < reports.size(); ++k)
                    print_report_row(g, reports[k], labels[k], out);
            }
            if (!expect.empty()) {
                Predicate want = parse_predicate(expect);
                if (want == Predicate::WQuasistable && w_id.empty())
                    throw InputError("--expect w-quasistable needs --w");
                if (want == Predicate::PQuasistable && mark_id.empty())
                    throw InputError("--expect p-quasistable needs --mark");
                for (const StabilityReport& rep : reports)
                    if (rep.predicate == want && !rep.verdict) {
                        err << "expectation failed: " << predicate_name(want) << " is false\n";
                        return 1;
                    }
            }
            return 0;
        }

        if (app.got_subcommand(c_jh)) {
            CombSheaf i = parse_sheaf(g, load_json(sheaf_path));
            ChoiceRule rule = rule_name == "maxlex" ? ChoiceRule::MaxLex : ChoiceRule::MinLex;
            JHFiltration f = jh_filtration(g, i, pol, rule);
            JHClass cls = gr(g, i, pol, rule);
            if (format == "json") {
                ordered_json doc;
                doc["filtration"] = render_filtration(g, f);
                doc["class"] = render_class(g, cls);
                emit(doc, out);
            } else {
                out << "filtration with " << f.steps.size() << " steps\n";
                for (size_t k = 0; k < f.steps.size(); ++k)
                    out << "step " << k + 1 << ": peel " << g.subcurve_to_string(f.steps[k].peeled)
                        << " from " << g.subcurve_to_string(f.steps[k].stage) << "\n";
                out << "class:\n";
                for (const JHPiece& p : cls.pieces)
                    out << "  " << g.subcurve_to_string(p.support) << " nonfree="
                        << edges_str(g, p.piece.nonfree) << " deg: " << deg_str(g, p.piece) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(c_construct)) {
            std::vector<JHPiece> parts = parse_parts(g, load_json(parts_path));
            int w = g.vertex_index(w_id);
            CombSheaf built = build_quasistable(g, pol, parts, w);
            StabilityReport rep = is_W_quasistable(g, built, pol, w);
            if (format == "json") {
                ordered_json doc;
                doc["sheaf"] = render_sheaf(g, built);
                doc["w"] = w_id;
                doc["w_quasistable"] = rep.verdict;
                emit(doc, out);
            } else {
                out << "built sheaf\n";
                out << "nonfree=" << edges_str(g, built.nonfree) << "\n";
                out << "deg: " << deg_str(g, built) << "\n";
                print_report_row(g, rep, "w-quasistable[" + w_id + "]", out);
            }
            return 0;
        }

        if (app.got_subcommand(c_reduce)) {
            CombSheaf i = parse_sheaf(g, load_json(sheaf_path));
            TwistTrace trace = semistable_reduce(g, i, pol);
            if (!sigma_arg.empty()) {
                if (sigma_arg.rfind("mark=", 0) != 0 || sigma_arg.size() <= 5)
                    throw InputError("--sigma expects mark=<marking-id>");
                int w = g.marking_vertex(sigma_arg.substr(5));
                TwistTrace sigma = sigma_reduce(g, trace.final, pol, w);
                trace.steps.insert(trace.steps.end(), sigma.steps.begin(), sigma.steps.end());
                trace.final = sigma.final;
            }
            if (format == "json") {
                emit(render_trace(g, trace), out);
            } else {
                out << "start deg: " << deg_str(g, trace.start) << "\n";
                for (const TwistStep& s : trace.steps)
                    out << "fire " << g.subcurve_to_string(s.fired) << " (beta_min "
                        << s.beta_min_before.to_string() << ")\n";
                out << "final deg: " << deg_str(g, trace.final) << "\n";
            }
            return 0;
        }

        // enumerate and count share their option surface.
        EnumPredicate pred = parse_enum_predicate(pred_name);
        int w = -1;
        if (pred == EnumPredicate::WQuasistable) {
            if (w_id.empty()) throw InputError("--pred w-quasistable needs --w");
            w = g.vertex_index(w_id);
        }
        if (pred == EnumPredicate::SigmaQuasistable) {
            if (mark_id.empty()) throw InputError("--pred sigma-quasistable needs --mark");
            w = g.marking_vertex(mark_id);
        }
        long long chi = pol.target_chi();
        bool chi_given = app.got_subcommand(c_enum) ? static_cast<bool>(*enum_chi)
                                                    : static_cast<bool>(*count_chi);
        if (chi_given) chi = chi_flag;
        EnumOptions opts;
        opts.jobs = static_cast<int>(jobs);
        opts.invertible_only = invertible_only;
        EnumerationResult res = enumerate_classes(g, pol, chi, pred, w, opts);

        if (app.got_subcommand(c_enum)) {
            if (format == "json") {
                emit(render_enumeration(g, res, pred, chi), out);
            } else {
                out << "predicate: " << enum_predicate_name(pred) << "\n";
                out << "chi: " << chi << "\n";
                for (const EnumeratedClass& c : res.classes)
                    out << c.sheaf.nonfree.size() << "  " << edges_str(g, c.sheaf.nonfree) << "  "
                        << deg_str(g, c.sheaf) << "  beta_min=" << c.beta_min.to_string()
                        << "  witness=" << g.subcurve_to_string(c.witness) << "\n";
                out << "total: " << res.classes.size() << "\n";
            }
            return 0;
        }

        if (with_jh_classes && pred != EnumPredicate::Semistable)
            throw InputError("--jh-classes needs --pred semistable");
        if (format == "json") {
            ordered_json doc;
            doc["predicate"] = enum_predicate_name(pred);
            doc["chi"] = chi;
            doc["total"] = res.classes.size();
            doc["count_by_nonfree_size"] = res.count_by_nonfree_size;
            if (with_jh_classes) doc["jh_classes"] = count_jh_classes(g, pol, chi);
            emit(doc, out);
        } else {
            out << "predicate: " << enum_predicate_name(pred) << "\n";
            out << "chi: " << chi << "\n";
            for (size_t k = 0; k < res.count_by_nonfree_size.size(); ++k)
                out << "|S|=" << k << ": " << res.count_by_nonfree_size[k] << "\n";
            out << "total: " << res.classes.size() << "\n";
            if (with_jh_classes) out << "jh_classes: " << count_jh_classes(g, pol, chi) << "\n";
        }
        return 0;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        err << "invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace jacstab
