#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "vos/corpus.hpp"
#include "vos/errors.hpp"
#include "vos/report.hpp"

namespace {

std::vector<std::string> parse_suite(const std::string& arg) {
    std::vector<std::string> ids;
    if (arg == "all") return ids; // empty selection = every check
    std::size_t start = 0;
    while (start <= arg.size()) {
        std::size_t comma = arg.find(',', start);
        if (comma == std::string::npos) comma = arg.size();
        std::string id = arg.substr(start, comma - start);
        if (!id.empty()) ids.push_back(id);
        start = comma + 1;
    }
    const std::vector<std::string>& known = vos::all_check_ids();
    for (const std::string& id : ids)
        if (std::find(known.begin(), known.end(), id) == known.end())
            throw vos::ValidationError("unknown checkId: " + id);
    if (ids.empty()) throw vos::ValidationError("empty check suite");
    return ids;
}

// The selection in canonical order, deduplicated.
std::vector<std::string> canonical_suite(const std::vector<std::string>& selected) {
    const std::vector<std::string>& all = vos::all_check_ids();
    if (selected.empty()) return all;
    std::vector<std::string> out;
    for (const std::string& id : all)
        if (std::find(selected.begin(), selected.end(), id) != selected.end())
            out.push_back(id);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"batch verification of vanishing-off series invariants over a group corpus"};
    std::string corpus = "builtin";
    std::size_t maxOrder = 1024;
    std::string suite = "all";
    std::string format = "json";
    std::string outPath = "-";
    unsigned jobs = 1;
    std::size_t charCap = 1024;
    app.add_option("--corpus", corpus, "corpus manifest path, or \"builtin\"");
    app.add_option("--max-order", maxOrder, "largest group order to process");
    app.add_option("--suite", suite, "\"all\" or a comma-separated list of checkIds");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "markdown"}));
    app.add_option("--out", outPath, "output path, \"-\" for stdout");
    app.add_option("--jobs", jobs, "parallel workers over groups");
    app.add_option("--char-cap", charCap, "largest order for character-table checks");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; anything else is an operational error.
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        std::vector<std::string> selected = parse_suite(suite);
        std::vector<std::string> reportSuite = canonical_suite(selected);

        std::vector<vos::CorpusEntry> entries =
            corpus == "builtin" ? vos::builtin_corpus(maxOrder) : vos::load_manifest(corpus);
        std::erase_if(entries, [&](const vos::CorpusEntry& e) {
            return e.group->order() > maxOrder;
        });
        if (entries.empty()) throw vos::ValidationError("corpus is empty after filtering");

        std::vector<vos::GroupSummary> summaries(entries.size());
        std::vector<std::vector<vos::CheckRecord>> recordSlots(entries.size());
        std::atomic<std::size_t> cursor{0};
        std::atomic<bool> failed{false};
        std::mutex errorLock;
        std::string firstError;

        auto work = [&] {
            for (;;) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= entries.size()) return;
                try {
                    vos::CheckOptions co;
                    co.charCap = charCap;
                    vos::GroupContext ctx = vos::make_context(entries[i].group, co);
                    recordSlots[i] = vos::run_suite(ctx, selected);
                    summaries[i] = vos::summarize(ctx, entries[i].tags);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> g(errorLock);
                    if (!failed.exchange(true))
                        firstError = entries[i].group->name() + ": " + e.what();
                }
            }
        };

        std::size_t nThreads = std::min<std::size_t>(std::max(1u, jobs), entries.size());
        if (nThreads <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < nThreads; ++t) pool.emplace_back(work);
            for (std::thread& t : pool) t.join();
        }
        if (failed.load()) throw vos::Error(firstError);

        std::vector<vos::CheckRecord> records;
        for (std::vector<vos::CheckRecord>& slot : recordSlots)
            records.insert(records.end(), std::make_move_iterator(slot.begin()),
                           std::make_move_iterator(slot.end()));

        vos::VerificationReport report = vos::assemble_report(
            corpus, maxOrder, reportSuite, std::move(summaries), std::move(records));
        std::string text =
            format == "json" ? vos::render_json(report) : vos::render_markdown(report);

        if (outPath == "-") {
            std::cout << text;
        } else {
            std::ofstream f(outPath, std::ios::binary);
            if (!f) throw vos::ValidationError("cannot open output path: " + outPath);
            f << text;
            f.flush();
            if (!f) throw vos::ValidationError("write failed: " + outPath);
        }
        return vos::exit_code_for(report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
