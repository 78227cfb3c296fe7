#include "vos/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vos/series.hpp"

namespace vos {

namespace {

using nlohmann::json;

GroupPtr build_utsub(unsigned order, const BuildOptions& opts) {
    // Fixed unitriangular generator closures whose V-series drops strictly
    // below the lower central series (at i = 3 for the first two, and at both
    // i = 3 and i = 4 for the third).
    std::string name = "utsub(" + std::to_string(order) + ")";
    switch (order) {
        case 32: // <I+E12, I+E23+E34> over F_2, n = 4
            return build_from_unitriangular_generators(name, 4, 2,
                                                       {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 1}},
                                                       opts);
        case 243: // <I+E12, I+E23+E34, I+E13, I+E24> over F_3, n = 4
            return build_from_unitriangular_generators(name, 4, 3,
                                                       {{1, 0, 0, 0, 0, 0},
                                                        {0, 0, 0, 1, 0, 1},
                                                        {0, 1, 0, 0, 0, 0},
                                                        {0, 0, 0, 0, 1, 0}},
                                                       opts);
        case 256: // <I+E12+E23, I+E34+E45> over F_2, n = 5
            return build_from_unitriangular_generators(
                name, 5, 2, {{1, 0, 0, 0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 1, 0, 1}},
                opts);
        default:
            throw ValidationError("unknown utsub order " + std::to_string(order));
    }
}

void need_params(const std::string& family, const std::vector<unsigned>& params,
                 std::size_t count) {
    if (params.size() != count)
        throw ValidationError("family " + family + " takes " + std::to_string(count) +
                              " parameter(s), got " + std::to_string(params.size()));
}

} // namespace

GroupPtr build_builtin_family(const std::string& family, const std::vector<unsigned>& params,
                              const BuildOptions& opts) {
    if (family == "cyclic") {
        need_params(family, params, 1);
        return build_cyclic(params[0], opts);
    }
    if (family == "abelian") {
        if (params.empty()) throw ValidationError("family abelian needs at least one factor");
        return build_abelian(params, opts);
    }
    if (family == "elemab") {
        need_params(family, params, 2);
        std::vector<unsigned> factors(params[1], params[0]);
        auto g = build_abelian(factors, opts);
        return g;
    }
    if (family == "dihedral") {
        need_params(family, params, 1);
        return build_dihedral(params[0], opts);
    }
    if (family == "quaternion") {
        need_params(family, params, 1);
        return build_quaternion(params[0], opts);
    }
    if (family == "extraspecial") {
        need_params(family, params, 2);
        if (params[0] == 2)
            throw ValidationError(
                "extraspecial family here covers odd p; the order-8 groups are dihedral[8] "
                "and quaternion[8]");
        return build_extraspecial(params[0], params[1], '+', opts);
    }
    if (family == "UT") {
        need_params(family, params, 2);
        return build_unitriangular(params[0], params[1], opts);
    }
    if (family == "utsub") {
        need_params(family, params, 1);
        return build_utsub(params[0], opts);
    }
    if (family == "S3") {
        need_params(family, params, 0);
        return build_from_permutations("S3", 3, {{1, 2, 0}, {1, 0, 2}});
    }
    throw ValidationError("unknown builtin family " + family);
}

std::vector<CorpusEntry> builtin_corpus(std::size_t maxOrder, const BuildOptions& opts) {
    std::vector<CorpusEntry> out;
    auto put = [&](GroupPtr g, std::vector<std::string> tags) {
        if (g->order() > maxOrder) return;
        if (auto p = g->prime()) tags.push_back("p" + std::to_string(*p));
        out.push_back({std::move(g), std::move(tags)});
    };
    for (unsigned n = 2; n <= 16; ++n) put(build_cyclic(n, opts), {"abelian"});
    put(build_builtin_family("elemab", {2, 2}, opts), {"abelian"});
    put(build_builtin_family("elemab", {2, 3}, opts), {"abelian"});
    put(build_builtin_family("elemab", {2, 4}, opts), {"abelian"});
    put(build_builtin_family("elemab", {3, 2}, opts), {"abelian"});
    put(build_builtin_family("elemab", {3, 3}, opts), {"abelian"});
    put(build_builtin_family("elemab", {5, 2}, opts), {"abelian"});
    put(build_abelian({2, 4}, opts), {"abelian"});
    put(build_abelian({3, 9}, opts), {"abelian"});
    put(build_dihedral(8, opts), {"camina-candidate"});
    put(build_dihedral(16, opts), {});
    put(build_quaternion(8, opts), {"camina-candidate"});
    put(build_quaternion(16, opts), {});
    put(build_extraspecial(3, 3, '+', opts), {"camina-candidate"});
    put(build_extraspecial(3, 9, '+', opts), {"camina-candidate"});
    put(build_extraspecial(5, 5, '+', opts), {"camina-candidate"});
    put(build_extraspecial(5, 25, '+', opts), {"camina-candidate"});
    put(build_builtin_family("S3", {}, opts), {"camina-candidate"});
    put(build_unitriangular(3, 2, opts), {});
    put(build_unitriangular(3, 3, opts), {});
    put(build_unitriangular(3, 5, opts), {});
    put(build_unitriangular(4, 2, opts), {});
    put(build_unitriangular(4, 3, opts), {});
    put(build_unitriangular(5, 2, opts), {"class4"});
    put(build_utsub(32, opts), {"class3", "v-proper"});
    put(build_utsub(243, opts), {"class3", "v-proper"});
    put(build_utsub(256, opts), {"class4", "v-proper"});
    put(direct_product(build_quaternion(8, opts), build_cyclic(2, opts), opts), {});
    put(direct_product(build_dihedral(8, opts), build_cyclic(2, opts), opts), {});
    put(direct_product(build_quaternion(8, opts), build_cyclic(3, opts), opts), {});
    put(direct_product(build_unitriangular(3, 3, opts), build_cyclic(3, opts), opts), {});
    put(direct_product(build_quaternion(8, opts), build_quaternion(8, opts), opts), {});
    return out;
}

namespace {

[[noreturn]] void file_error(const std::string& path, const std::string& what) {
    throw ValidationError("group file " + path + ": " + what);
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw ValidationError("parse error in " + path + ": " + ex.what());
    }
}

const json& need_field(const json& j, const std::string& path, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end()) file_error(path, "missing field '" + field + "'");
    return *it;
}

unsigned uint_field(const json& j, const std::string& path, const std::string& field) {
    const json& v = need_field(j, path, field);
    if (!v.is_number_unsigned()) file_error(path, "field '" + field + "' must be a non-negative integer");
    return v.get<unsigned>();
}

} // namespace

GroupPtr load_group_file(const std::string& path, const BuildOptions& opts) {
    json j = parse_json_file(path);
    if (!j.is_object()) file_error(path, "top level must be an object");
    if (uint_field(j, path, "format") != 1) file_error(path, "unsupported format");
    const json& nameJ = need_field(j, path, "name");
    if (!nameJ.is_string()) file_error(path, "field 'name' must be a string");
    std::string name = nameJ.get<std::string>();
    const json& kindJ = need_field(j, path, "kind");
    if (!kindJ.is_string()) file_error(path, "field 'kind' must be a string");
    std::string kind = kindJ.get<std::string>();

    GroupPtr g;
    if (kind == "permutation") {
        unsigned degree = uint_field(j, path, "degree");
        const json& gensJ = need_field(j, path, "generators");
        if (!gensJ.is_array()) file_error(path, "field 'generators' must be an array");
        std::vector<std::vector<unsigned>> gens;
        for (const json& pj : gensJ) {
            if (!pj.is_array()) file_error(path, "each generator must be an image array");
            gens.push_back(pj.get<std::vector<unsigned>>());
        }
        g = build_from_permutations(name, degree, gens, opts);
    } else if (kind == "cayley") {
        const json& tableJ = need_field(j, path, "table");
        if (!tableJ.is_array()) file_error(path, "field 'table' must be an array");
        g = build_from_cayley_table(name, tableJ.get<std::vector<Idx>>(), opts);
    } else if (kind == "unitriangular") {
        unsigned n = uint_field(j, path, "n");
        unsigned p = uint_field(j, path, "p");
        auto it = j.find("generators");
        if (it == j.end()) {
            g = build_unitriangular(n, p, opts);
            if (g->name() != name) file_error(path, "name must be " + g->name() +
                                                        " for the full unitriangular group");
        } else {
            if (!it->is_array()) file_error(path, "field 'generators' must be an array");
            std::vector<UniMat> gens;
            for (const json& mj : *it) {
                if (!mj.is_array()) file_error(path, "each generator must be an entry array");
                gens.push_back(mj.get<UniMat>());
            }
            g = build_from_unitriangular_generators(name, n, p, gens, opts);
        }
    } else if (kind == "builtin") {
        const json& famJ = need_field(j, path, "family");
        if (!famJ.is_string()) file_error(path, "field 'family' must be a string");
        std::vector<unsigned> params;
        if (auto it = j.find("params"); it != j.end()) {
            if (!it->is_array()) file_error(path, "field 'params' must be an array");
            params = it->get<std::vector<unsigned>>();
        }
        g = build_builtin_family(famJ.get<std::string>(), params, opts);
    } else {
        file_error(path, "unknown kind '" + kind + "'");
    }

    if (auto it = j.find("expected"); it != j.end()) {
        const json& exp = *it;
        if (!exp.is_object()) file_error(path, "field 'expected' must be an object");
        if (auto f = exp.find("order"); f != exp.end()) {
            std::size_t want = f->get<std::size_t>();
            if (g->order() != want)
                throw ValidationError("expected-fact mismatch: order " +
                                      std::to_string(g->order()) + " != " +
                                      std::to_string(want));
        }
        if (auto f = exp.find("classCount"); f != exp.end()) {
            std::size_t want = f->get<std::size_t>();
            std::size_t got = conjugacy_classes(g).count();
            if (got != want)
                throw ValidationError("expected-fact mismatch: classCount " +
                                      std::to_string(got) + " != " + std::to_string(want));
        }
        if (auto f = exp.find("nilpotenceClass"); f != exp.end()) {
            std::size_t want = f->get<std::size_t>();
            auto lcs = lower_central_series(g);
            bool nilpotent = lcs.back().order() == 1;
            std::string got = nilpotent ? std::to_string(lcs.size() - 1) : "none";
            if (!nilpotent || lcs.size() - 1 != want)
                throw ValidationError("expected-fact mismatch: nilpotenceClass " + got +
                                      " != " + std::to_string(want));
        }
    }
    return g;
}

std::vector<CorpusEntry> load_manifest(const std::string& path, const BuildOptions& opts) {
    json j = parse_json_file(path);
    if (!j.is_object()) file_error(path, "top level must be an object");
    if (uint_field(j, path, "format") != 1) file_error(path, "unsupported format");
    const json& groupsJ = need_field(j, path, "groups");
    if (!groupsJ.is_array()) file_error(path, "field 'groups' must be an array");

    std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::vector<CorpusEntry> out;
    std::set<std::string> names;
    for (const json& gj : groupsJ) {
        if (!gj.is_object()) file_error(path, "each manifest entry must be an object");
        const json& pj = need_field(gj, path, "path");
        if (!pj.is_string()) file_error(path, "entry field 'path' must be a string");
        std::filesystem::path gpath = base / pj.get<std::string>();
        CorpusEntry entry;
        entry.group = load_group_file(gpath.string(), opts);
        if (auto it = gj.find("tags"); it != gj.end()) {
            if (!it->is_array()) file_error(path, "entry field 'tags' must be an array");
            entry.tags = it->get<std::vector<std::string>>();
        }
        if (!names.insert(entry.group->name()).second)
            file_error(path, "duplicate group name " + entry.group->name());
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace vos
