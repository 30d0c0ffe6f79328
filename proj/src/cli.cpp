#include "twk/cli.hpp"

#include "twk/cohomology.hpp"
#include "twk/gen.hpp"
#include "twk/manifest.hpp"
#include "twk/parallel.hpp"
#include "twk/totalization.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace twk {

namespace {

std::string weight_str(const ExpVec& w) {
    if (w.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + std::to_string(w[i]);
    return s;
}

void print_report(const std::string& what, const CheckReport& rep, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["check"] = what;
        j["pass"] = rep.pass();
        nlohmann::json fails = nlohmann::json::array();
        for (const auto& f : rep.failures)
            fails.push_back({{"where", f.where}, {"detail", f.detail}});
        j["failures"] = fails;
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (rep.pass()) {
        std::cout << what << ": pass\n";
    } else {
        std::cout << what << ": FAIL (" << rep.failures.size() << " failure(s))\n";
        for (const auto& f : rep.failures)
            std::cout << "  " << f.where << ": " << f.detail << "\n";
    }
}

int cmd_validate(const Manifest& m, const std::string& object, bool as_json) {
    if (auto it = m.twisted.find(object); it != m.twisted.end()) {
        CheckReport rep = mc_check_tw(it->second);
        print_report("validate " + object, rep, as_json);
        return rep.pass() ? 0 : 1;
    }
    if (auto it = m.simplex.find(object); it != m.simplex.end()) {
        CheckReport rep = mc_check_simplex(it->second);
        print_report("validate " + object, rep, as_json);
        return rep.pass() ? 0 : 1;
    }
    if (auto it = m.equivariant.find(object); it != m.equivariant.end()) {
        CheckReport rep = mc_check_equiv(it->second);
        print_report("validate " + object, rep, as_json);
        return rep.pass() ? 0 : 1;
    }
    std::cerr << "no object named '" << object << "'\n";
    return 2;
}

int cmd_cohomology(const Manifest& m, const std::string& from, const std::string& to,
                   int window, bool as_json) {
    auto fit = m.twisted.find(from);
    auto tit = m.twisted.find(to);
    if (fit == m.twisted.end() || tit == m.twisted.end()) {
        std::cerr << "cohomology: objects must be twisted objects in the manifest\n";
        return 2;
    }
    CheckReport va = mc_check_tw(fit->second);
    CheckReport vb = mc_check_tw(tit->second);
    if (!va.pass() || !vb.pass()) {
        std::cout << "refused: inputs do not validate ("
                  << (va.pass() ? to : from) << ": "
                  << (va.pass() ? vb.summary() : va.summary()) << ")\n";
        return 1;
    }
    AssembleOptions opt;
    opt.weight_window = window >= 0 ? window : m.options.weight_window;
    AssembledComplex c = assemble_hom(fit->second, tit->second, opt);
    CohomologyReport rep = cohomology_dims(c);
    if (as_json) {
        nlohmann::json j;
        j["from"] = from;
        j["to"] = to;
        j["window"] = c.window;
        j["weighted"] = rep.weighted;
        j["window_exact"] = rep.window_exact;
        if (!rep.note.empty()) j["note"] = rep.note;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"degree", r.degree}, {"weight", weight_str(r.weight)},
                            {"dim", r.dim}});
        j["rows"] = rows;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Hom(" << from << ", " << to << ")  window=" << c.window
                  << (rep.window_exact ? "" : "  [window-approximate]") << "\n";
        if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
        std::cout << "degree  weight  dim\n";
        for (int d = c.deg_lo; d <= c.deg_hi; ++d) {
            bool printed = false;
            for (const auto& r : rep.rows)
                if (r.degree == d) {
                    std::cout << d << "       " << weight_str(r.weight) << "      "
                              << r.dim << "\n";
                    printed = true;
                }
            if (!printed) std::cout << d << "       -       0\n";
        }
        for (int d = c.deg_lo; d <= c.deg_hi; ++d)
            std::cout << "total H^" << d << " = " << rep.dim_at(d) << "\n";
    }
    return 0;
}

int cmd_roundtrip(const Manifest& m, const std::string& object, bool as_json) {
    auto it = m.twisted.find(object);
    if (it == m.twisted.end()) {
        std::cerr << "roundtrip: '" << object << "' is not a twisted object\n";
        return 2;
    }
    const TwPerfComplex& w = it->second;
    TotObject t = twisted_to_tot(w);
    TwPerfComplex back = tot_to_twisted(t);
    CheckReport rep;
    if (!(back.a == w.a)) {
        for (const auto& [I, g] : w.a.components())
            if (!(back.a.component(I) == g)) {
                rep.fail("component " + tuple_str(I), "differs after the roundtrip");
                break;
            }
        for (const auto& [I, g] : back.a.components())
            if (!(w.a.component(I) == g)) {
                rep.fail("component " + tuple_str(I), "appears only after the roundtrip");
                break;
            }
    }
    print_report("roundtrip " + object, rep, as_json);
    return rep.pass() ? 0 : 1;
}

int cmd_nerve(const Manifest& m, int level, bool as_json) {
    if (!m.cover) {
        std::cerr << "nerve: manifest has no cover\n";
        return 2;
    }
    auto tuples = nerve_level(*m.cover, level);
    auto witness = matching_witness(CosimplicialBackend::cech(m.cover), level);
    if (as_json) {
        nlohmann::json j;
        j["level"] = level;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& t : tuples) {
            nlohmann::json names = nlohmann::json::array();
            for (int i : t) names.push_back(m.cover->names().at(i));
            arr.push_back({{"tuple", names},
                           {"nondegenerate", !has_adjacent_repeat(t)}});
        }
        j["tuples"] = arr;
        j["matching_factors"] = witness.matching_factors.size();
        j["free_cells"] = witness.free_cells.size();
        j["split"] = witness.partition_ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "level " << level << ": " << tuples.size() << " tuple(s)\n";
        for (const auto& t : tuples) {
            std::cout << "  ";
            for (std::size_t i = 0; i < t.size(); ++i)
                std::cout << (i ? "," : "") << m.cover->names().at(t[i]);
            std::cout << (has_adjacent_repeat(t) ? "  (degenerate)" : "") << "\n";
        }
        std::cout << "free cells: " << witness.free_cells.size()
                  << ", matching factors: " << witness.matching_factors.size()
                  << " (2^k-1 = " << ((1 << level) - 1) << ")"
                  << ", split: " << (witness.partition_ok ? "yes" : "NO") << "\n";
    }
    return witness.partition_ok ? 0 : 1;
}

int cmd_selftest(std::uint64_t seed, int size, bool as_json, bool inject_defect) {
    struct Suite {
        std::string name;
        CheckReport rep;
        std::string counterexample;
    };
    std::vector<Suite> suites;
    std::vector<RingPtr> backends = {
        RingDesc::rationals(), RingDesc::prime_field(101),
        RingDesc::laurent(RingDesc::rationals(), {{"t", true}})};

    int trials = std::max(2, size);
    for (const auto& ring : backends) {
        Suite s;
        s.name = "twisted d2/Leibniz/assoc over " + ring->str();
        std::vector<CheckReport> reps(trials);
        std::vector<std::string> ces(trials);
        parallel_for(trials, [&](std::size_t i) {
            gen::Rng rng(seed + 1000 * i + std::hash<std::string>{}(ring->str()));
            CoverPtr cover = gen::random_cover(rng, rng.uniform(2, 3), ring);
            auto locals = std::make_shared<TwLocals>();
            for (int k = 0; k < cover->size(); ++k)
                locals->modules.push_back(gen::random_module(rng, 0, 1, 2));
            TwCochain u = gen::random_tw_cochain(rng, cover, locals, locals, 1);
            TwCochain v = gen::random_tw_cochain(rng, cover, locals, locals, 0);
            TwCochain w = gen::random_tw_cochain(rng, cover, locals, locals, 1);
            CheckReport& rep = reps[i];
            if (!delta(delta(u)).is_zero()) rep.fail("delta^2", "nonzero");
            TwCochain lhs = delta(tw_compose(u, v));
            TwCochain rhs = tw_compose(delta(u), v) +
                            ((u.total_degree() % 2 == 0) ? tw_compose(u, delta(v))
                                                         : -tw_compose(u, delta(v)));
            if (!(lhs == rhs)) rep.fail("Leibniz", "delta(u.v) != (delta u).v +- u.(delta v)");
            if (!(tw_compose(tw_compose(u, v), w) == tw_compose(u, tw_compose(v, w))))
                rep.fail("associativity", "(u.v).w != u.(v.w)");
            TwCochain one = TwCochain::identity(cover, locals);
            if (!(tw_compose(one, u) == u) || !(tw_compose(u, one) == u))
                rep.fail("unit", "identity cochain is not a unit");
            if (!rep.pass())
                ces[i] = cover_to_json(*cover);
        });
        for (int i = 0; i < trials; ++i)
            if (!reps[i].pass()) { s.rep = reps[i]; s.counterexample = ces[i]; break; }
        suites.push_back(std::move(s));
    }

    {
        Suite s;
        s.name = "matching witness (3-open nerve, [X/G])";
        CoverPtr cover3 = std::make_shared<RingedCover>(
            RingedCover::full_nerve(3, RingDesc::rationals()));
        for (int k = 1; k <= 4; ++k) {
            auto w = matching_witness(CosimplicialBackend::cech(cover3), k);
            if (!w.partition_ok || !w.projection_surjective)
                s.rep.fail("cech level " + std::to_string(k), "not split");
            if (w.matching_factors.size() != static_cast<std::size_t>((1 << k) - 1))
                s.rep.fail("cech level " + std::to_string(k), "factor count != 2^k-1");
        }
        auto action = std::make_shared<GroupAction>(
            GroupAction::regular(FiniteGroup::cyclic(2)));
        for (int k = 1; k <= 3; ++k) {
            auto w = matching_witness(CosimplicialBackend::equivariant(action), k);
            if (!w.partition_ok)
                s.rep.fail("[X/G] level " + std::to_string(k), "not split");
        }
        suites.push_back(std::move(s));
    }

    if (inject_defect) {
        // known-bad fixture: cocycle violation on a three-open cover; the
        // suite must fail and emit a reproducer manifest fragment
        Suite s;
        s.name = "injected known-bad fixture";
        CoverPtr c3 = std::make_shared<RingedCover>(
            RingedCover::full_nerve(3, RingDesc::rationals()));
        auto locals = std::make_shared<TwLocals>();
        locals->modules.assign(3, GradedModule(std::map<int, int>{{0, 1}}));
        TwCochain a(c3, locals, locals, 1);
        RingPtr Q = RingDesc::rationals();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Scalar v = (i == 0 && j == 2) ? Scalar::from_int(Q, 2) : Scalar::one(Q);
                GradedMap m(locals->at(j), locals->at(i), 0, Q);
                Matrix blk(Q, 1, 1);
                blk.set(0, 0, v);
                m.set_block(0, blk);
                a.set_component({i, j}, m);
            }
        TwPerfComplex bad{c3, locals, a};
        s.rep = mc_check_tw(bad);
        if (!s.rep.pass())
            s.counterexample = "{ \"cover\": " + cover_to_json(*c3) + ", " +
                               twisted_to_json(bad, "counterexample").substr(1);
        suites.push_back(std::move(s));
    }

    {
        Suite s;
        s.name = "simplicial identities for [X/G]";
        for (int gord : {1, 2, 3}) {
            auto g = FiniteGroup::cyclic(gord);
            auto a = GroupAction::regular(g);
            for (int k = 2; k <= 3; ++k)
                for (const auto& c : quotient_level(a, k)) {
                    for (int i = 0; i < k; ++i)
                        for (int j = i + 1; j <= k; ++j) {
                            // d_i d_j = d_{j-1} d_i for i < j
                            auto lhs = quotient_face(a, i, quotient_face(a, j, c));
                            auto rhs = quotient_face(a, j - 1, quotient_face(a, i, c));
                            if (lhs != rhs)
                                s.rep.fail("face relation",
                                           "d_i d_j != d_{j-1} d_i at " + tuple_str(c));
                        }
                }
        }
        suites.push_back(std::move(s));
    }

    bool pass = true;
    for (const auto& s : suites) pass = pass && s.rep.pass();
    if (as_json) {
        nlohmann::json j;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : suites)
            arr.push_back({{"suite", s.name}, {"pass", s.rep.pass()}});
        j["suites"] = arr;
        j["pass"] = pass;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& s : suites) {
            print_report(s.name, s.rep, false);
            if (!s.rep.pass() && !s.counterexample.empty())
                std::cout << "counterexample fragment:\n" << s.counterexample << "\n";
        }
    }
    return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact checker for twisted complexes, totalizations and "
                 "equivariant gluing data"};
    app.require_subcommand(1);

    std::string file, object, from, to, format = "text";
    int level = 0, window = -1, size = 4;
    std::uint64_t seed = 1;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "check the defining equations");
    validate->add_option("file", file)->required();
    validate->add_option("--object", object)->required();
    add_format(validate);

    CLI::App* cohom = app.add_subcommand("cohomology", "Hom-complex cohomology table");
    cohom->add_option("file", file)->required();
    cohom->add_option("--from", from)->required();
    cohom->add_option("--to", to)->required();
    cohom->add_option("--window", window);
    add_format(cohom);

    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "totalization <-> twisted comparison");
    roundtrip->add_option("file", file)->required();
    roundtrip->add_option("--object", object)->required();
    add_format(roundtrip);

    CLI::App* equivariant = app.add_subcommand("equivariant", "equivariant validation");
    equivariant->add_option("file", file)->required();
    equivariant->add_option("--object", object)->required();
    add_format(equivariant);

    CLI::App* nerve = app.add_subcommand("nerve", "nerve level and split structure");
    nerve->add_option("file", file)->required();
    nerve->add_option("--level", level)->required();
    add_format(nerve);

    CLI::App* selftest = app.add_subcommand("selftest", "randomized identity suites");
    selftest->add_option("--seed", seed);
    selftest->add_option("--sizes", size);
    bool inject_defect = false;
    selftest->add_flag("--inject-defect", inject_defect,
                       "add a known-bad fixture; the run must fail with a reproducer");
    add_format(selftest);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        bool as_json = format == "json";
        if (selftest->parsed()) return cmd_selftest(seed, size, as_json, inject_defect);
        Manifest m = parse_manifest_file(file);
        if (validate->parsed()) return cmd_validate(m, object, as_json);
        if (cohom->parsed()) return cmd_cohomology(m, from, to, window, as_json);
        if (roundtrip->parsed()) return cmd_roundtrip(m, object, as_json);
        if (equivariant->parsed()) {
            auto it = m.equivariant.find(object);
            if (it == m.equivariant.end()) {
                std::cerr << "equivariant: no equivariant object named '" << object
                          << "'\n";
                return 2;
            }
            CheckReport rep = mc_check_equiv(it->second);
            print_report("equivariant " + object, rep, as_json);
            return rep.pass() ? 0 : 1;
        }
        if (nerve->parsed()) return cmd_nerve(m, level, as_json);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace twk
