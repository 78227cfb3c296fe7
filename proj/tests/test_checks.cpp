#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "vos/checks.hpp"
#include "vos/corpus.hpp"

using namespace vos;

namespace {

std::map<std::string, CheckRecord> by_id(const std::vector<CheckRecord>& recs) {
    std::map<std::string, CheckRecord> out;
    for (const auto& r : recs) out[r.checkId] = r;
    return out;
}

GroupPtr s3() {
    return build_from_permutations("S3", 3, {{1, 2, 0}, {1, 0, 2}});
}

} // namespace

TEST_CASE("the canonical check list") {
    const auto& ids = all_check_ids();
    CHECK(ids.size() == 24);
    CHECK(ids.front() == "sandwich");
    CHECK(std::find(ids.begin(), ids.end(), "thm2a") != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "macdonald-D3") != ids.end());
    // lemma block sits between the structural checks and the theorems
    auto at = [&](const std::string& s) {
        return std::find(ids.begin(), ids.end(), s) - ids.begin();
    };
    CHECK(at("sandwich") < at("lewis-index"));
    CHECK(at("lewis-index") < at("lem-hone"));
    CHECK(at("lem-hone") < at("thm1"));
    CHECK(at("thm1") < at("thm3"));
}

TEST_CASE("run_suite covers every check in canonical order") {
    GroupContext ctx = make_context(build_quaternion(8));
    auto recs = run_suite(ctx);
    REQUIRE(recs.size() == all_check_ids().size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].checkId == all_check_ids()[i]);
        CHECK(recs[i].groupName == "Q8");
    }
    // Requested subsets come back in canonical order no matter the input order.
    auto sub = run_suite(ctx, {"thm2a", "sandwich"});
    REQUIRE(sub.size() == 2);
    CHECK(sub[0].checkId == "sandwich");
    CHECK(sub[1].checkId == "thm2a");
}

TEST_CASE("unknown check ids are rejected") {
    GroupContext ctx = make_context(s3());
    CHECK_THROWS_AS(run_check(ctx, "nope"), ValidationError);
    CHECK_THROWS_AS(run_suite(ctx, {"sandwich", "zzz"}), ValidationError);
}

TEST_CASE("quaternion group verdicts") {
    auto recs = by_id(run_suite(build_quaternion(8)));
    CHECK(recs.at("sandwich").status == CheckStatus::pass);
    CHECK(recs.at("elem-abelian").status == CheckStatus::pass);
    CHECK(recs.at("H1-k3").status == CheckStatus::pass);

    // The class-2 group never reaches index 4, so the k >= 4 theorem has no
    // applicable index at all.
    const CheckRecord& t2a = recs.at("thm2a");
    CHECK(t2a.status == CheckStatus::skippedHypothesis);
    CHECK(t2a.hypothesisFlags.at("applicable-index-exists") == false);

    // V_3 = G_3 leaves the index-law hypotheses unmet.
    CHECK(recs.at("lewis-index").status == CheckStatus::skippedHypothesis);
    CHECK(recs.at("lewis-index").hypothesisFlags.at("V3<G3") == false);

    // Camina of class 2, not 3.
    const CheckRecord& t3 = recs.at("thm3");
    CHECK(t3.status == CheckStatus::skippedHypothesis);
    CHECK(t3.hypothesisFlags.at("camina") == true);
    CHECK(t3.hypothesisFlags.at("class3") == false);
}

TEST_CASE("non-nilpotent verdicts") {
    auto recs = by_id(run_suite(s3()));
    CHECK(recs.at("sandwich").status == CheckStatus::pass);
    CHECK(recs.at("H1-k3").status == CheckStatus::pass);
    CHECK(recs.at("elem-abelian").status == CheckStatus::skippedHypothesis);
    CHECK(recs.at("lem-quotient-V").status == CheckStatus::skippedHypothesis);
    CHECK(recs.at("lem-classsize-p").status == CheckStatus::skippedHypothesis);
    CHECK(recs.at("thm1").status == CheckStatus::skippedHypothesis);
    CHECK(recs.at("thm2b").status == CheckStatus::skippedHypothesis);
    // Camina but not nilpotent.
    CHECK(recs.at("thm3").status == CheckStatus::skippedHypothesis);
    CHECK(recs.at("thm3").hypothesisFlags.at("camina") == true);
    CHECK(recs.at("thm3").hypothesisFlags.at("class3") == false);
}

TEST_CASE("index-law verdicts where the v-series separates") {
    auto recs = by_id(run_suite(build_builtin_family("utsub", {32})));
    const CheckRecord& li = recs.at("lewis-index");
    CHECK(li.status == CheckStatus::pass);
    CHECK(li.hypothesisFlags.at("V3<G3") == true);
    CHECK(li.metrics.at("G:V1") == 4);
    CHECK(li.metrics.at("G2:V2") == 2);
    CHECK(li.metrics.at("p") == 2);
    CHECK(li.metrics.at("n") == 1);

    const CheckRecord& ld = recs.at("lewis-D3");
    CHECK(ld.status == CheckStatus::pass);
    CHECK((ld.metrics.at("branch-index") == 1 || ld.metrics.at("branch-D3=V1") == 1));

    CHECK(recs.at("lem-hone").status == CheckStatus::pass);
    CHECK(recs.at("lem-quotient-V").status == CheckStatus::pass);
    CHECK(recs.at("thm1").status == CheckStatus::pass);
    CHECK(recs.at("thm2b").status == CheckStatus::pass);
    CHECK(recs.at("thm2c").status == CheckStatus::pass);
    CHECK(recs.at("thm2d").status == CheckStatus::pass);
}

TEST_CASE("class-four group exercises the deep indices") {
    GroupContext ctx = make_context(build_builtin_family("utsub", {256}));
    auto recs = by_id(run_suite(ctx));
    for (const char* id : {"sandwich", "elem-abelian", "lewis-index", "lewis-D3", "H1-k3",
                           "lem-hone", "lem-quotient-V", "lem-classsize-H1", "lem-DleE",
                           "lem-G/K-iso", "cor-GiVi-bound", "lem-KleD", "cor-DleD",
                           "lem-EBound", "thm1", "thm2a", "thm2b", "thm2c", "thm2d"}) {
        CAPTURE(id);
        CHECK(recs.at(id).status == CheckStatus::pass);
    }
    const CheckRecord& t2a = recs.at("thm2a");
    CHECK(t2a.hypothesisFlags.at("i4.Vk<Gk") == true);
    CHECK(t2a.metrics.at("i4.Gk-1:Vk-1") == 4);
    CHECK(t2a.metrics.at("G:D3") == 4);
    const CheckRecord& t1 = recs.at("thm1");
    CHECK(t1.hypothesisFlags.at("i4.H1(3..k)") == true);
    // No failures anywhere on this group.
    for (const auto& [id, r] : recs) CHECK(r.status != CheckStatus::fail);
}

TEST_CASE("record invariants across the corpus") {
    for (const CorpusEntry& e : builtin_corpus(64)) {
        GroupContext ctx = make_context(e.group);
        for (const CheckRecord& r : run_suite(ctx)) {
            CAPTURE(e.group->name());
            CAPTURE(r.checkId);
            // Nothing in the shipped corpus fails.
            CHECK(r.status != CheckStatus::fail);
            if (r.status == CheckStatus::fail) CHECK(r.witness.has_value());
            if (r.status == CheckStatus::skippedHypothesis) {
                bool anyFalse = false;
                for (const auto& [k, v] : r.hypothesisFlags) anyFalse = anyFalse || !v;
                CHECK(anyFalse);
            }
        }
    }
}

TEST_CASE("character cap turns table checks into capped skips") {
    CheckOptions tight;
    tight.charCap = 4;
    GroupContext ctx = make_context(build_quaternion(8), tight);
    CheckRecord r = run_check(ctx, "lem-char-vanish");
    CHECK(r.status == CheckStatus::skippedCap);
    CHECK(r.metrics.at("cap-hit") == 1);
    // The rest of the suite is unaffected.
    CHECK(run_check(ctx, "sandwich").status == CheckStatus::pass);
}

TEST_CASE("a corrupted profile fails with a reproducible witness") {
    auto g = build_builtin_family("utsub", {32});

    // Shrinking V_1 breaks the sandwich inclusion G_2 <= V_1.
    GroupContext bad1 = make_context(g);
    bad1.profile.vanishing[0] = trivial_subgroup(g);
    CheckRecord r1 = run_check(bad1, "sandwich");
    REQUIRE(r1.status == CheckStatus::fail);
    REQUIRE(r1.witness.has_value());
    CheckRecord again = run_check(bad1, "sandwich");
    CHECK(again.status == r1.status);
    CHECK(again.witness == r1.witness);
    CHECK(again.hypothesisFlags == r1.hypothesisFlags);
    CHECK(again.metrics == r1.metrics);

    // Inflating V_1 breaks the index law |G:V_1| = |G_2:V_2|^2.
    GroupContext bad2 = make_context(g);
    bad2.profile.vanishing[0] = full_subgroup(g);
    CheckRecord r2 = run_check(bad2, "lewis-index");
    CHECK(r2.status == CheckStatus::fail);
    REQUIRE(r2.witness.has_value());
    CHECK(r2.witness->find("G:V_1") != std::string::npos);

    // An untouched context still passes.
    GroupContext good = make_context(g);
    CHECK(run_check(good, "sandwich").status == CheckStatus::pass);
    CHECK(run_check(good, "lewis-index").status == CheckStatus::pass);
}

TEST_CASE("corrupted series subgroups break the theorem conclusions") {
    auto g = build_builtin_family("utsub", {256});

    GroupContext bad = make_context(g);
    bad.profile.D.at(4) = trivial_subgroup(g);
    CheckRecord r = run_check(bad, "thm2b");
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.witness.has_value());

    GroupContext bad2 = make_context(g);
    bad2.profile.D.at(3) = full_subgroup(g);
    CheckRecord r2 = run_check(bad2, "cor-DleD");
    CHECK(r2.status == CheckStatus::fail);
    CHECK(r2.witness.has_value());
}

TEST_CASE("status names") {
    CHECK(std::string(to_string(CheckStatus::pass)) == "pass");
    CHECK(std::string(to_string(CheckStatus::fail)) == "fail");
    CHECK(std::string(to_string(CheckStatus::skippedHypothesis)) == "skipped-hypothesis");
    CHECK(std::string(to_string(CheckStatus::skippedCap)) == "skipped-cap");
}
