#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vos/checks.hpp"

namespace vos {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportFormat = 1;

// Per-group series digest used by both report formats.
struct GroupSummary {
    std::string name;
    std::size_t order = 0;
    bool nilpotent = false;
    unsigned nilpotenceClass = 0; // meaningful only when nilpotent
    std::vector<std::size_t> lowerOrders;     // |G_i|, i = 1..maxIndex
    std::vector<std::size_t> vanishingOrders; // |V_i|, stable terms, same length
    std::map<unsigned, std::size_t> yOrders, dOrders, eOrders;
    std::size_t indexV1 = 1;            // |G:V_1|
    std::optional<std::size_t> indexD3; // |G:D_3| when the series reaches i = 3
    bool camina = false;
    bool caminaClass3 = false;
    std::vector<std::string> tags;
};

GroupSummary summarize(const GroupContext& ctx, const std::vector<std::string>& tags = {});

struct CoverageRow {
    std::size_t pass = 0, fail = 0, skippedHypothesis = 0, skippedCap = 0;
    // Nothing in the corpus ever met the hypotheses: worth flagging, since a
    // check that never fires verifies nothing.
    bool vacuous() const { return pass + fail == 0; }
};

struct VerificationReport {
    std::string toolVersion = kToolVersion;
    std::string corpusSource;
    std::size_t maxOrder = 0;
    std::vector<std::string> suite;           // canonical order
    std::vector<GroupSummary> groups;         // sorted by name
    std::vector<CheckRecord> records;         // sorted by (groupName, checkId)
    std::map<std::string, CoverageRow> coverage;
    std::map<std::string, std::size_t> statusTotals; // keyed by status string
};

VerificationReport assemble_report(std::string corpusSource, std::size_t maxOrder,
                                   std::vector<std::string> suite,
                                   std::vector<GroupSummary> groups,
                                   std::vector<CheckRecord> records);

// Deterministic renderings: no timestamps, no environment data.
std::string render_json(const VerificationReport& r);
std::string render_markdown(const VerificationReport& r);

// 0 when nothing failed, 1 otherwise. Operational errors exit 2 elsewhere.
int exit_code_for(const VerificationReport& r);

} // namespace vos
