#include "twk/manifest.hpp"
#include "twk/scalar_parse.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace twk {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw std::invalid_argument("manifest: " + where + ": " + what);
}

RingPtr parse_ring(const json& j, const std::string& where) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "Q") return RingDesc::rationals();
        bad(where, "unknown ring name '" + s + "'");
    }
    if (!j.is_object()) bad(where, "ring must be \"Q\" or an object");
    std::string kind = j.value("kind", "");
    if (kind == "Q" || kind == "rationals") return RingDesc::rationals();
    if (kind == "fp" || kind == "prime-field") {
        if (!j.contains("p")) bad(where, "prime field needs p");
        return RingDesc::prime_field(j.at("p").get<std::int64_t>());
    }
    if (kind == "laurent") {
        RingPtr base = j.contains("base") ? parse_ring(j.at("base"), where + ".base")
                                          : RingDesc::rationals();
        std::vector<LaurentVar> vars;
        if (!j.contains("vars") || !j.at("vars").is_array())
            bad(where, "laurent ring needs a vars array");
        for (const auto& v : j.at("vars")) {
            if (v.is_string()) {
                vars.push_back({v.get<std::string>(), true});
            } else if (v.is_object()) {
                LaurentVar lv;
                lv.name = v.value("name", "");
                lv.invertible = v.value("invertible", true);
                if (lv.name.empty()) bad(where, "variable without a name");
                vars.push_back(lv);
            } else {
                bad(where, "variable entries must be strings or objects");
            }
        }
        return RingDesc::laurent(base, std::move(vars));
    }
    bad(where, "unknown ring kind '" + kind + "'");
}

std::set<int> parse_subset(const json& j, const RingedCover& partial,
                           const std::vector<std::string>& names,
                           const std::string& where) {
    std::set<int> s;
    if (!j.is_array()) bad(where, "subset must be an array of index names");
    for (const auto& e : j) {
        std::string nm = e.get<std::string>();
        auto it = std::find(names.begin(), names.end(), nm);
        if (it == names.end()) bad(where, "unknown index '" + nm + "'");
        s.insert(static_cast<int>(it - names.begin()));
    }
    (void)partial;
    if (s.empty()) bad(where, "empty subset");
    return s;
}

CoverPtr parse_cover(const json& j) {
    if (!j.contains("indices")) bad("cover", "missing indices");
    std::vector<std::string> names = j.at("indices").get<std::vector<std::string>>();

    std::vector<std::set<int>> nerve;
    std::map<std::set<int>, RingPtr> rings;
    std::map<std::pair<std::set<int>, std::set<int>>, RingHom> res;

    RingedCover dummy;
    if (!j.contains("nerve")) bad("cover", "missing nerve");
    for (const auto& s : j.at("nerve")) nerve.push_back(parse_subset(s, dummy, names, "cover.nerve"));

    if (!j.contains("rings")) bad("cover", "missing rings");
    for (const auto& [key, val] : j.at("rings").items()) {
        // key: comma-separated index names
        std::set<int> s;
        std::stringstream ss(key);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto it = std::find(names.begin(), names.end(), tok);
            if (it == names.end()) bad("cover.rings", "unknown index '" + tok + "'");
            s.insert(static_cast<int>(it - names.begin()));
        }
        rings[s] = parse_ring(val, "cover.rings[" + key + "]");
    }

    if (j.contains("restrictions"))
        for (const auto& r : j.at("restrictions")) {
            std::set<int> from = parse_subset(r.at("from"), dummy, names, "restriction.from");
            std::set<int> to = parse_subset(r.at("to"), dummy, names, "restriction.to");
            auto fit = rings.find(from);
            auto tit = rings.find(to);
            if (fit == rings.end() || tit == rings.end())
                bad("restrictions", "endpoints without declared rings");
            std::map<std::string, Scalar> images;
            if (r.contains("images"))
                for (const auto& [var, lit] : r.at("images").items())
                    images.emplace(var, parse_scalar(lit.get<std::string>(), tit->second));
            res.emplace(std::make_pair(from, to), RingHom(fit->second, tit->second, images));
        }
    // fill identity restrictions for equal-ring inclusions that were not given
    for (const auto& a : nerve)
        for (const auto& b : nerve) {
            if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
            if (res.find({a, b}) != res.end()) continue;
            auto fit = rings.find(a);
            auto tit = rings.find(b);
            if (fit != rings.end() && tit != rings.end() && *fit->second == *tit->second)
                res.emplace(std::make_pair(a, b), RingHom::identity(fit->second));
        }
    return std::make_shared<RingedCover>(std::move(names), std::move(nerve),
                                         std::move(rings), std::move(res));
}

ActionPtr parse_action(const json& j) {
    GroupAction a;
    if (!j.contains("group")) bad("action", "missing group table");
    a.group.table = j.at("group").get<std::vector<std::vector<int>>>();
    a.carrier_size = j.value("carrier", 0);
    if (j.contains("act")) a.act = j.at("act").get<std::vector<std::vector<int>>>();
    else {
        // default: trivial action
        a.act.assign(a.carrier_size, std::vector<int>(a.group.order()));
        for (int x = 0; x < a.carrier_size; ++x)
            for (int g = 0; g < a.group.order(); ++g) a.act[x][g] = x;
    }
    a.validate();
    return std::make_shared<GroupAction>(std::move(a));
}

GradedModule parse_module(const json& j, const std::string& where) {
    if (!j.is_object()) bad(where, "ranks must be an object degree -> rank");
    std::map<int, int> ranks;
    for (const auto& [k, v] : j.items()) ranks[std::stoi(k)] = v.get<int>();
    return GradedModule(std::move(ranks));
}

void fill_blocks(GradedMap& g, const json& blocks, const RingPtr& ring,
                 const std::string& where) {
    if (!blocks.is_object()) bad(where, "blocks must be an object degree -> matrix");
    for (const auto& [dk, rows] : blocks.items()) {
        int d = std::stoi(dk);
        if (!rows.is_array()) bad(where, "matrix must be an array of rows");
        std::vector<std::vector<Scalar>> m;
        for (const auto& row : rows) {
            std::vector<Scalar> r;
            for (const auto& e : row) r.push_back(parse_scalar(e.get<std::string>(), ring));
            m.push_back(std::move(r));
        }
        Matrix blk = Matrix::from_rows(ring, m);
        if (blk.rows() != g.target().rank(d + g.degree()) ||
            blk.cols() != g.source().rank(d))
            bad(where, "block shape mismatch in degree " + dk);
        g.set_block(d, blk);
    }
}

int index_of_name(const RingedCover& cov, const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        int i = j.get<int>();
        if (i < 0 || i >= cov.size()) bad(where, "index out of range");
        return i;
    }
    int i = cov.index_of(j.get<std::string>());
    if (i < 0) bad(where, "unknown index '" + j.get<std::string>() + "'");
    return i;
}

TwPerfComplex parse_twisted(const json& j, const CoverPtr& cover,
                            const std::string& name) {
    const RingedCover& cov = *cover;
    auto locals = std::make_shared<TwLocals>();
    locals->modules.assign(cov.size(), GradedModule());
    if (!j.contains("locals")) bad(name, "missing locals");
    for (const auto& [key, val] : j.at("locals").items()) {
        int i = cov.index_of(key);
        if (i < 0) bad(name + ".locals", "unknown index '" + key + "'");
        locals->modules[i] = parse_module(val, name + ".locals." + key);
    }
    TwCochain a(cover, locals, locals, 1);
    if (j.contains("a"))
        for (const auto& comp : j.at("a")) {
            MultiIndex I;
            for (const auto& e : comp.at("tuple"))
                I.push_back(index_of_name(cov, e, name + ".a.tuple"));
            int k = static_cast<int>(I.size()) - 1;
            GradedMap g(locals->at(I.back()), locals->at(I.front()), 1 - k,
                        cov.ring_of_tuple(I));
            fill_blocks(g, comp.at("blocks"), cov.ring_of_tuple(I),
                        name + ".a" + tuple_str(I));
            a.set_component(I, a.component(I) + g);
        }
    return TwPerfComplex{cover, locals, std::move(a)};
}

std::map<std::pair<int, int>, Scalar> parse_units(const json& j, const CoverPtr& cover,
                                                  const std::string& name) {
    const RingedCover& cov = *cover;
    std::map<std::pair<int, int>, Scalar> units;
    for (const auto& u : j.at("units")) {
        int i = index_of_name(cov, u.at("pair").at(0), name);
        int k = index_of_name(cov, u.at("pair").at(1), name);
        Scalar s =
            parse_scalar(u.at("value").get<std::string>(), cov.ring_of_tuple({i, k}));
        units.emplace(std::make_pair(i, k), std::move(s));
    }
    return units;
}

SimplexObj parse_simplex(const json& j, const std::string& name) {
    RingPtr ring = parse_ring(j.at("ring"), name + ".ring");
    int n = j.at("n").get<int>();
    auto fam = std::make_shared<SimplexFamily>();
    fam->ring = ring;
    if (!j.contains("objects") || static_cast<int>(j.at("objects").size()) != n + 1)
        bad(name, "needs n+1 objects");
    for (const auto& o : j.at("objects")) {
        GradedModule m = parse_module(o.at("ranks"), name + ".objects");
        GradedMap d(m, m, 1, ring);
        if (o.contains("diff")) fill_blocks(d, o.at("diff"), ring, name + ".diff");
        fam->objects.emplace_back(m, d, ring);
    }
    DgCochain phi(fam, fam, 1);
    // diagonal identities are implicit
    for (int i = 0; i <= n; ++i)
        phi.set_component({i, i}, GradedMap::identity(fam->at(i).module, ring));
    if (j.contains("phi"))
        for (const auto& comp : j.at("phi")) {
            MultiIndex I = comp.at("tuple").get<MultiIndex>();
            int k = static_cast<int>(I.size()) - 1;
            GradedMap g(fam->at(I.back()).module, fam->at(I.front()).module, 1 - k, ring);
            fill_blocks(g, comp.at("blocks"), ring, name + ".phi" + tuple_str(I));
            phi.set_component(I, g);
        }
    return SimplexObj{fam, std::move(phi)};
}

EquivariantComplex parse_equivariant(const json& j, const ActionPtr& action,
                                     const std::string& name) {
    RingPtr ring = parse_ring(j.at("ring"), name + ".ring");
    auto locals = std::make_shared<EqLocals>();
    locals->ring = ring;
    if (!j.contains("locals") ||
        static_cast<int>(j.at("locals").size()) != action->carrier_size)
        bad(name, "needs one local complex per carrier point");
    for (const auto& o : j.at("locals")) {
        GradedModule m = parse_module(o.at("ranks"), name + ".locals");
        GradedMap d(m, m, 1, ring);
        if (o.contains("diff")) fill_blocks(d, o.at("diff"), ring, name + ".locals.diff");
        locals->modules.push_back(m);
        locals->diffs.push_back(d);
    }
    EqCochain phi(action, locals, locals, 1);
    // identity on the degeneracy slots is implicit
    for (int x = 0; x < action->carrier_size; ++x)
        phi.set_component({x, action->group.identity()},
                          GradedMap::identity(locals->modules.at(x), ring));
    if (j.contains("phi"))
        for (const auto& comp : j.at("phi")) {
            QuotientCell c = comp.at("cell").get<QuotientCell>();
            int k = static_cast<int>(c.size()) - 1;
            EqCochain probe(action, locals, locals, 1);
            GradedMap g(locals->modules.at(probe.moved_point(c)),
                        locals->modules.at(c.at(0)), 1 - k, ring);
            fill_blocks(g, comp.at("blocks"), ring, name + ".phi" + tuple_str(c));
            phi.set_component(c, g);
        }
    return EquivariantComplex{action, locals, std::move(phi)};
}

}  // namespace

bool Manifest::has_object(const std::string& name) const {
    return twisted.count(name) || simplex.count(name) || equivariant.count(name);
}

Manifest parse_manifest(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("manifest: JSON parse error: ") + e.what());
    }
    Manifest m;
    if (j.contains("cover")) m.cover = parse_cover(j.at("cover"));
    if (j.contains("action")) m.action = parse_action(j.at("action"));
    if (j.contains("options")) {
        const auto& o = j.at("options");
        m.options.weight_window = o.value("weight_window", -1);
        m.options.probes = o.value("probes", 8);
        m.options.seed = o.value("seed", 1ull);
    }
    if (j.contains("objects"))
        for (const auto& [name, obj] : j.at("objects").items()) {
            std::string type = obj.value("type", "");
            if (type == "twisted") {
                if (!m.cover) bad(name, "twisted object without a cover");
                m.twisted.emplace(name, parse_twisted(obj, m.cover, name));
            } else if (type == "line-bundle") {
                if (!m.cover) bad(name, "line bundle without a cover");
                auto units = parse_units(obj, m.cover, name);
                m.line_units.emplace(name, units);
                m.twisted.emplace(name, line_bundle(m.cover, units));
            } else if (type == "simplex") {
                m.simplex.emplace(name, parse_simplex(obj, name));
            } else if (type == "equivariant") {
                if (!m.action) bad(name, "equivariant object without an action");
                m.equivariant.emplace(name, parse_equivariant(obj, m.action, name));
            } else {
                bad(name, "unknown object type '" + type + "'");
            }
        }
    if (j.contains("morphisms"))
        for (const auto& [name, mor] : j.at("morphisms").items()) {
            std::string from = mor.value("from", "");
            std::string to = mor.value("to", "");
            auto fit = m.twisted.find(from);
            auto tit = m.twisted.find(to);
            if (fit == m.twisted.end() || tit == m.twisted.end())
                bad(name, "morphism endpoints must name twisted objects");
            int deg = mor.value("degree", 0);
            TwCochain u(m.cover, fit->second.locals, tit->second.locals, deg);
            if (mor.contains("components"))
                for (const auto& comp : mor.at("components")) {
                    MultiIndex I;
                    for (const auto& e : comp.at("tuple"))
                        I.push_back(index_of_name(*m.cover, e, name + ".tuple"));
                    int k = static_cast<int>(I.size()) - 1;
                    GradedMap g(fit->second.locals->at(I.back()),
                                tit->second.locals->at(I.front()), deg - k,
                                m.cover->ring_of_tuple(I));
                    fill_blocks(g, comp.at("blocks"), m.cover->ring_of_tuple(I),
                                name + tuple_str(I));
                    u.set_component(I, g);
                }
            m.morphisms.emplace(name, NamedTwMorphism{from, to, std::move(u)});
        }
    return m;
}

Manifest parse_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("manifest: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str());
}

std::string cover_to_json(const RingedCover& cover) {
    json j;
    j["indices"] = cover.names();
    json nerve = json::array();
    auto ring_json = [](const RingPtr& r) -> json {
        switch (r->kind) {
            case RingKind::Rationals: return "Q";
            case RingKind::PrimeField: return {{"kind", "fp"}, {"p", r->p}};
            case RingKind::Laurent: {
                json vars = json::array();
                for (const auto& v : r->vars)
                    vars.push_back({{"name", v.name}, {"invertible", v.invertible}});
                json base = r->base_kind == RingKind::Rationals
                                ? json("Q")
                                : json{{"kind", "fp"}, {"p", r->base_p}};
                return {{"kind", "laurent"}, {"base", base}, {"vars", vars}};
            }
        }
        return nullptr;
    };
    json rings = json::object();
    for (const auto& s : cover.nerve()) {
        json names = json::array();
        std::string key;
        for (int i : s) {
            names.push_back(cover.names().at(i));
            if (!key.empty()) key += ",";
            key += cover.names().at(i);
        }
        nerve.push_back(names);
        rings[key] = ring_json(cover.ring_of(s));
    }
    j["nerve"] = nerve;
    j["rings"] = rings;
    return j.dump(2);
}

std::string cochain_to_json(const TwCochain& u, const std::string& name) {
    json mor;
    mor["degree"] = u.total_degree();
    json comps = json::array();
    for (const auto& [I, g] : u.components()) {
        json comp;
        json tuple = json::array();
        for (int i : I) tuple.push_back(u.cover()->names().at(i));
        comp["tuple"] = tuple;
        json blocks = json::object();
        for (const auto& [d, blk] : g.blocks()) {
            json rows = json::array();
            for (int r = 0; r < blk.rows(); ++r) {
                json row = json::array();
                for (int c = 0; c < blk.cols(); ++c) row.push_back(blk.at(r, c).str());
                rows.push_back(row);
            }
            blocks[std::to_string(d)] = rows;
        }
        comp["blocks"] = blocks;
        comps.push_back(comp);
    }
    mor["components"] = comps;
    json root;
    root["morphisms"][name] = mor;
    return root.dump(2);
}

std::string twisted_to_json(const TwPerfComplex& t, const std::string& name) {
    json obj;
    obj["type"] = "twisted";
    json locals = json::object();
    for (int i = 0; i < t.cover->size(); ++i) {
        json ranks = json::object();
        for (const auto& [d, r] : t.locals->at(i).ranks())
            ranks[std::to_string(d)] = r;
        locals[t.cover->names().at(i)] = ranks;
    }
    obj["locals"] = locals;
    json acomps = json::array();
    for (const auto& [I, g] : t.a.components()) {
        json comp;
        json tuple = json::array();
        for (int i : I) tuple.push_back(t.cover->names().at(i));
        comp["tuple"] = tuple;
        json blocks = json::object();
        for (const auto& [d, blk] : g.blocks()) {
            json rows = json::array();
            for (int r = 0; r < blk.rows(); ++r) {
                json row = json::array();
                for (int c = 0; c < blk.cols(); ++c) row.push_back(blk.at(r, c).str());
                rows.push_back(row);
            }
            blocks[std::to_string(d)] = rows;
        }
        comp["blocks"] = blocks;
        acomps.push_back(comp);
    }
    obj["a"] = acomps;
    json root;
    root["objects"][name] = obj;
    return root.dump(2);
}

}  // namespace twk
