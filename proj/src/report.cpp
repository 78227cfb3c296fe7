#include "vos/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace vos {

using ordered_json = nlohmann::ordered_json;

GroupSummary summarize(const GroupContext& ctx, const std::vector<std::string>& tags) {
    const SeriesProfile& prof = ctx.profile;
    GroupSummary s;
    s.name = ctx.group->name();
    s.order = ctx.group->order();
    s.nilpotent = prof.nilpotent;
    s.nilpotenceClass = prof.nilpotenceClass;
    for (unsigned i = 1; i <= prof.maxIndex(); ++i) {
        s.lowerOrders.push_back(prof.g_term(i).order());
        s.vanishingOrders.push_back(prof.v_term(i).order());
    }
    for (const auto& [i, sub] : prof.Y) s.yOrders.emplace(i, sub.order());
    for (const auto& [i, sub] : prof.D) s.dOrders.emplace(i, sub.order());
    for (const auto& [i, sub] : prof.E) s.eOrders.emplace(i, sub.order());
    s.indexV1 = s.order / prof.v_term(1).order();
    if (prof.D.count(3)) s.indexD3 = s.order / prof.D.at(3).order();
    s.camina = ctx.camina.isCamina;
    s.caminaClass3 = ctx.camina.class3;
    s.tags = tags;
    return s;
}

VerificationReport assemble_report(std::string corpusSource, std::size_t maxOrder,
                                   std::vector<std::string> suite,
                                   std::vector<GroupSummary> groups,
                                   std::vector<CheckRecord> records) {
    VerificationReport r;
    r.corpusSource = std::move(corpusSource);
    r.maxOrder = maxOrder;
    r.suite = std::move(suite);
    r.groups = std::move(groups);
    r.records = std::move(records);

    std::sort(r.groups.begin(), r.groups.end(),
              [](const GroupSummary& a, const GroupSummary& b) { return a.name < b.name; });
    std::sort(r.records.begin(), r.records.end(), [](const CheckRecord& a, const CheckRecord& b) {
        if (a.groupName != b.groupName) return a.groupName < b.groupName;
        return a.checkId < b.checkId;
    });

    for (const std::string& id : r.suite) r.coverage[id]; // ensure a row per check
    for (const char* s : {"pass", "fail", "skipped-hypothesis", "skipped-cap"})
        r.statusTotals[s] = 0;
    for (const CheckRecord& rec : r.records) {
        CoverageRow& row = r.coverage[rec.checkId];
        switch (rec.status) {
        case CheckStatus::pass: ++row.pass; break;
        case CheckStatus::fail: ++row.fail; break;
        case CheckStatus::skippedHypothesis: ++row.skippedHypothesis; break;
        case CheckStatus::skippedCap: ++row.skippedCap; break;
        }
        ++r.statusTotals[to_string(rec.status)];
    }
    return r;
}

std::string render_json(const VerificationReport& r) {
    ordered_json j;
    j["reportFormat"] = kReportFormat;
    j["toolVersion"] = r.toolVersion;
    j["corpus"] = {{"source", r.corpusSource},
                   {"maxOrder", r.maxOrder},
                   {"groupCount", r.groups.size()}};

    ordered_json summary;
    summary["records"] = r.records.size();
    for (const auto& [k, v] : r.statusTotals) summary[k] = v;
    j["summary"] = summary;

    ordered_json coverage = ordered_json::object();
    for (const std::string& id : r.suite) {
        const CoverageRow& row = r.coverage.at(id);
        coverage[id] = {{"pass", row.pass},
                        {"fail", row.fail},
                        {"skipped-hypothesis", row.skippedHypothesis},
                        {"skipped-cap", row.skippedCap},
                        {"vacuous", row.vacuous()}};
    }
    j["coverage"] = coverage;

    ordered_json groups = ordered_json::array();
    for (const GroupSummary& g : r.groups) {
        ordered_json e;
        e["name"] = g.name;
        e["order"] = g.order;
        e["tags"] = g.tags;
        e["nilpotent"] = g.nilpotent;
        if (g.nilpotent) e["nilpotenceClass"] = g.nilpotenceClass;
        e["camina"] = g.camina;
        e["caminaClass3"] = g.caminaClass3;
        e["lowerOrders"] = g.lowerOrders;
        e["vanishingOrders"] = g.vanishingOrders;
        auto subMap = [](const std::map<unsigned, std::size_t>& m) {
            ordered_json o = ordered_json::object();
            for (const auto& [i, n] : m) o[std::to_string(i)] = n;
            return o;
        };
        e["Y"] = subMap(g.yOrders);
        e["D"] = subMap(g.dOrders);
        e["E"] = subMap(g.eOrders);
        e["indexV1"] = g.indexV1;
        if (g.indexD3) e["indexD3"] = *g.indexD3;
        groups.push_back(std::move(e));
    }
    j["groups"] = groups;

    ordered_json records = ordered_json::array();
    for (const CheckRecord& rec : r.records) {
        ordered_json e;
        e["group"] = rec.groupName;
        e["checkId"] = rec.checkId;
        e["status"] = to_string(rec.status);
        e["hypothesisFlags"] = ordered_json::object();
        for (const auto& [k, v] : rec.hypothesisFlags) e["hypothesisFlags"][k] = v;
        e["metrics"] = ordered_json::object();
        for (const auto& [k, v] : rec.metrics) e["metrics"][k] = v;
        if (rec.witness) e["witness"] = *rec.witness;
        records.push_back(std::move(e));
    }
    j["records"] = records;

    return j.dump(2) + "\n";
}

namespace {

std::string cell(const std::map<unsigned, std::size_t>& m, unsigned i) {
    auto it = m.find(i);
    return it == m.end() ? std::string("-") : std::to_string(it->second);
}

} // namespace

std::string render_markdown(const VerificationReport& r) {
    std::string out;
    out += "# Verification report\n\n";
    out += "- tool version: " + r.toolVersion + "\n";
    out += "- corpus: " + r.corpusSource + " (max order " + std::to_string(r.maxOrder) + "), " +
           std::to_string(r.groups.size()) + " groups\n";
    out += "- records: " + std::to_string(r.records.size());
    for (const char* s : {"pass", "fail", "skipped-hypothesis", "skipped-cap"})
        out += ", " + std::string(s) + " " + std::to_string(r.statusTotals.at(s));
    out += "\n\n";

    out += "## Check coverage\n\n";
    out += "| check | pass | fail | skipped-hypothesis | skipped-cap | note |\n";
    out += "|---|---|---|---|---|---|\n";
    std::vector<std::string> vacuous;
    for (const std::string& id : r.suite) {
        const CoverageRow& row = r.coverage.at(id);
        out += "| " + id + " | " + std::to_string(row.pass) + " | " + std::to_string(row.fail) +
               " | " + std::to_string(row.skippedHypothesis) + " | " +
               std::to_string(row.skippedCap) + " | " + (row.vacuous() ? "vacuous" : "") + " |\n";
        if (row.vacuous()) vacuous.push_back(id);
    }
    out += "\n";
    if (!vacuous.empty()) {
        out += "Checks whose hypotheses no corpus group satisfies:\n\n";
        for (const std::string& id : vacuous) out += "- " + id + ": vacuous\n";
        out += "\n";
    }

    bool anyFail = false;
    for (const CheckRecord& rec : r.records) anyFail = anyFail || rec.status == CheckStatus::fail;
    if (anyFail) {
        out += "## Failures\n\n";
        for (const CheckRecord& rec : r.records) {
            if (rec.status != CheckStatus::fail) continue;
            out += "- " + rec.groupName + " / " + rec.checkId + ": " +
                   (rec.witness ? *rec.witness : std::string("(no witness)")) + "\n";
            for (const auto& [k, v] : rec.metrics)
                out += "  - " + k + " = " + std::to_string(v) + "\n";
        }
        out += "\n";
    }

    out += "## Groups\n\n";
    out += "Series term orders per index i; Y, D (i >= 3) and E (i >= 4) are the\n";
    out += "companion subgroups computed modulo the corresponding series terms.\n\n";
    for (const GroupSummary& g : r.groups) {
        out += "### " + g.name + " (order " + std::to_string(g.order) + ")\n\n";
        out += "| i | G_i | V_i | Y_i | D_i | E_i |\n";
        out += "|---|---|---|---|---|---|\n";
        for (std::size_t i = 1; i <= g.lowerOrders.size(); ++i) {
            unsigned ui = unsigned(i);
            out += "| " + std::to_string(i) + " | " + std::to_string(g.lowerOrders[i - 1]) +
                   " | " + std::to_string(g.vanishingOrders[i - 1]) + " | " +
                   cell(g.yOrders, ui) + " | " + cell(g.dOrders, ui) + " | " +
                   cell(g.eOrders, ui) + " |\n";
        }
        out += "\n- indices: |G:V_1| = " + std::to_string(g.indexV1);
        if (g.indexD3) out += ", |G:D_3| = " + std::to_string(*g.indexD3);
        out += "\n- ";
        out += g.nilpotent ? "nilpotent of class " + std::to_string(g.nilpotenceClass)
                           : std::string("not nilpotent");
        if (g.camina) out += g.caminaClass3 ? "; Camina of class 3" : "; Camina";
        if (!g.tags.empty()) {
            out += "\n- tags: ";
            for (std::size_t i = 0; i < g.tags.size(); ++i)
                out += (i ? ", " : "") + g.tags[i];
        }
        out += "\n\n";
    }

    out += "## Records\n\n";
    out += "| group | check | status | witness |\n";
    out += "|---|---|---|---|\n";
    for (const CheckRecord& rec : r.records)
        out += "| " + rec.groupName + " | " + rec.checkId + " | " + to_string(rec.status) +
               " | " + (rec.witness ? *rec.witness : std::string("")) + " |\n";
    return out;
}

int exit_code_for(const VerificationReport& r) {
    for (const CheckRecord& rec : r.records)
        if (rec.status == CheckStatus::fail) return 1;
    return 0;
}

} // namespace vos
