#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "vos/corpus.hpp"
#include "vos/series.hpp"

using namespace vos;

namespace {

std::string data(const std::string& file) {
    return std::string(TEST_DATA_DIR) + "/" + file;
}

std::vector<std::string> names(const std::vector<CorpusEntry>& entries) {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.group->name());
    return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

TEST_CASE("builtin family constructor") {
    CHECK(build_builtin_family("cyclic", {6})->order() == 6);
    CHECK(build_builtin_family("abelian", {2, 4})->order() == 8);
    CHECK(build_builtin_family("elemab", {2, 3})->order() == 8);
    CHECK(build_builtin_family("elemab", {2, 3})->exponent() == 2);
    CHECK(build_builtin_family("dihedral", {8})->order() == 8);
    CHECK(build_builtin_family("quaternion", {16})->order() == 16);
    CHECK(build_builtin_family("extraspecial", {3, 9})->order() == 27);
    CHECK(build_builtin_family("UT", {4, 2})->order() == 64);
    CHECK(build_builtin_family("utsub", {243})->order() == 243);
    CHECK(build_builtin_family("S3", {})->order() == 6);

    CHECK_THROWS_AS(build_builtin_family("nosuch", {}), ValidationError);
    CHECK_THROWS_AS(build_builtin_family("cyclic", {}), ValidationError);
    CHECK_THROWS_AS(build_builtin_family("cyclic", {2, 3}), ValidationError);
    CHECK_THROWS_AS(build_builtin_family("abelian", {}), ValidationError);
    CHECK_THROWS_AS(build_builtin_family("utsub", {100}), ValidationError);
    // The order-8 extraspecial groups live under their own family names.
    CHECK_THROWS_WITH_AS(build_builtin_family("extraspecial", {2, 4}),
                         doctest::Contains("dihedral"), ValidationError);
}

TEST_CASE("builtin corpus membership by order bound") {
    auto small = builtin_corpus(8);
    auto ns = names(small);
    for (unsigned n = 2; n <= 8; ++n) CHECK(has(ns, "C" + std::to_string(n)));
    CHECK(has(ns, "D8"));
    CHECK(has(ns, "Q8"));
    CHECK(has(ns, "UT(3,2)"));
    CHECK(has(ns, "S3"));
    CHECK_FALSE(has(ns, "C9"));
    CHECK_FALSE(has(ns, "D16"));
    for (const auto& e : small) CHECK(e.group->order() <= 8);

    auto mid = builtin_corpus(64);
    CHECK(has(names(mid), "UT(4,2)"));
    CHECK(has(names(mid), "utsub(32)"));
    CHECK(has(names(mid), "Q8xQ8"));
    CHECK_FALSE(has(names(mid), "UT(4,3)"));
    CHECK_FALSE(has(names(mid), "utsub(243)"));

    auto full = builtin_corpus(1024);
    auto fn = names(full);
    CHECK(full.size() == 46);
    CHECK(has(fn, "UT(5,2)"));
    CHECK(has(fn, "UT(4,3)"));
    CHECK(has(fn, "utsub(243)"));
    CHECK(has(fn, "utsub(256)"));
    CHECK(has(fn, "ES(125,e25)"));
    // Names are unique: reports key on them.
    std::set<std::string> uniq(fn.begin(), fn.end());
    CHECK(uniq.size() == fn.size());
}

TEST_CASE("builtin corpus is deterministic and tagged") {
    auto a = builtin_corpus(128);
    auto b = builtin_corpus(128);
    CHECK(names(a) == names(b));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].tags == b[i].tags);

    for (const auto& e : a) {
        if (e.group->name() == "Q8") {
            CHECK(has(e.tags, "camina-candidate"));
            CHECK(has(e.tags, "p2"));
        }
        if (e.group->name() == "utsub(32)") {
            CHECK(has(e.tags, "v-proper"));
            CHECK(has(e.tags, "class3"));
        }
        if (e.group->name() == "S3") CHECK_FALSE(has(e.tags, "p2"));
    }
}

TEST_CASE("group files load every kind") {
    CHECK(load_group_file(data("good_builtin_q8.json"))->order() == 8);
    CHECK(load_group_file(data("good_builtin_q8.json"))->name() == "Q8");

    GroupPtr perm = load_group_file(data("good_perm_s3.json"));
    CHECK(perm->order() == 6);
    CHECK(perm->name() == "S3-perm");

    GroupPtr cay = load_group_file(data("good_cayley_c4.json"));
    CHECK(cay->order() == 4);
    CHECK(cay->element_order(1) == 4);

    GroupPtr full = load_group_file(data("good_ut42.json"));
    CHECK(full->order() == 64);
    CHECK(full->name() == "UT(4,2)");

    GroupPtr gens = load_group_file(data("good_utgens.json"));
    CHECK(gens->order() == 32);
    CHECK(gens->name() == "W32");
}

TEST_CASE("expected facts are enforced") {
    CHECK_THROWS_WITH_AS(load_group_file(data("bad_expected_order.json")),
                         doctest::Contains("expected-fact mismatch: order 6 != 60"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(load_group_file(data("bad_expected_classes.json")),
                         doctest::Contains("expected-fact mismatch: classCount 4 != 3"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(load_group_file(data("bad_expected_class.json")),
                         doctest::Contains("expected-fact mismatch: nilpotenceClass"),
                         ValidationError);
}

TEST_CASE("malformed group files fail with the offending path") {
    CHECK_THROWS_WITH_AS(load_group_file(data("malformed.json")),
                         doctest::Contains("parse error in"), ValidationError);
    CHECK_THROWS_WITH_AS(load_group_file(data("missing_kind.json")),
                         doctest::Contains("missing field 'kind'"), ValidationError);
    CHECK_THROWS_WITH_AS(load_group_file(data("bad_format.json")),
                         doctest::Contains("unsupported format"), ValidationError);
    CHECK_THROWS_WITH_AS(load_group_file(data("bad_fullname.json")),
                         doctest::Contains("name must be UT(3,2)"), ValidationError);
    CHECK_THROWS_WITH_AS(load_group_file(data("no_such_file.json")),
                         doctest::Contains("cannot open"), ValidationError);
    CHECK_THROWS_AS(load_group_file(data("bad_kind.json")), ValidationError);
}

TEST_CASE("manifests load with tags and reject duplicates") {
    auto entries = load_manifest(std::string(SAMPLE_DATA_DIR) + "/manifest.json");
    REQUIRE(entries.size() >= 4);
    std::set<std::string> uniq;
    bool sawTag = false;
    for (const auto& e : entries) {
        CHECK(uniq.insert(e.group->name()).second);
        sawTag = sawTag || !e.tags.empty();
    }
    CHECK(sawTag);

    CHECK_THROWS_WITH_AS(load_manifest(data("manifest_dup.json")),
                         doctest::Contains("duplicate group name"), ValidationError);
    CHECK_THROWS_WITH_AS(load_manifest(data("manifest_nogroups.json")),
                         doctest::Contains("missing field 'groups'"), ValidationError);
    CHECK_THROWS_WITH_AS(load_manifest(data("manifest_badpath.json")),
                         doctest::Contains("cannot open"), ValidationError);
}

TEST_CASE("fixed unitriangular closures have the documented series") {
    auto w32 = build_builtin_family("utsub", {32});
    SeriesProfile p32 = series_profile(w32);
    CHECK(p32.nilpotenceClass == 3);
    CHECK(p32.v_term(1).order() == 8);
    CHECK(p32.v_term(3).order() < p32.g_term(3).order());

    auto w243 = build_builtin_family("utsub", {243});
    SeriesProfile p243 = series_profile(w243);
    CHECK(p243.nilpotenceClass == 3);
    CHECK(p243.v_term(3).order() < p243.g_term(3).order());

    auto w256 = build_builtin_family("utsub", {256});
    SeriesProfile p256 = series_profile(w256);
    CHECK(p256.nilpotenceClass == 4);
    std::vector<std::size_t> lower, vanishing;
    for (const auto& t : p256.lower) lower.push_back(t.order());
    for (const auto& t : p256.vanishing) vanishing.push_back(t.order());
    CHECK(lower == std::vector<std::size_t>{256, 16, 8, 2, 1});
    CHECK(vanishing == std::vector<std::size_t>{64, 8, 2, 1});
    CHECK(p256.v_term(4).order() < p256.g_term(4).order());
}
