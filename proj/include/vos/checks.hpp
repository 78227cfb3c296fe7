#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vos/character_table.hpp"
#include "vos/series.hpp"

namespace vos {

enum class CheckStatus { pass, fail, skippedHypothesis, skippedCap };

const char* to_string(CheckStatus s);

// One verdict per (group, checkId). Universally quantified statements are
// evaluated exhaustively; "fail" always carries a witness; skipped-hypothesis
// always carries at least one false hypothesis flag. Flags and metrics for a
// specific series index i are prefixed "i<i>.".
struct CheckRecord {
    std::string groupName;
    std::string checkId;
    CheckStatus status = CheckStatus::skippedHypothesis;
    std::map<std::string, bool> hypothesisFlags;
    std::map<std::string, std::int64_t> metrics;
    std::optional<std::string> witness;
};

// Canonical checkId order used by reports and by suite "all".
const std::vector<std::string>& all_check_ids();

struct CheckOptions {
    std::size_t charCap = 1024; // largest order for character-table checks
    BuildOptions build;
    EnumOptions enumeration;
};

// Shared per-group state. The character table and the H_1 answers are
// computed at most once, on demand. Checks read everything from here, so a
// test can tamper with the profile and re-run a single check to confirm that
// failures reproduce with the same witness.
struct GroupContext {
    GroupPtr group;
    CheckOptions opts;
    SeriesProfile profile;
    ConjugacyClassData classes;
    SubgroupSet centerSet;
    SubgroupSet secondDerived; // [G', G']
    CaminaData camina;

    const CharacterTable& table(); // throws CapError when |G| > charCap
    bool h1(unsigned k);           // cached is_H1 verdict
    const std::optional<SubgroupSet>& h1_witness(unsigned k);

private:
    std::optional<CharacterTable> table_;
    std::map<unsigned, H1Result> h1_;
    const H1Result& h1_full(unsigned k);
};

GroupContext make_context(const GroupPtr& g, const CheckOptions& opts = {});

CheckRecord run_check(GroupContext& ctx, const std::string& checkId);

// Empty suite means every checkId, in canonical order.
std::vector<CheckRecord> run_suite(GroupContext& ctx, const std::vector<std::string>& suite = {});
std::vector<CheckRecord> run_suite(const GroupPtr& g, const std::vector<std::string>& suite = {},
                                   const CheckOptions& opts = {});

} // namespace vos
