// arabizi -- command-line front end for the transliteration pipeline:
// corpus preparation, model building, candidate inspection, message
// transliteration, and gold-set evaluation.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arabizi/candgen.hpp"
#include "arabizi/charmap.hpp"
#include "arabizi/evalharness.hpp"
#include "arabizi/langmodel.hpp"
#include "arabizi/selector.hpp"
#include "arabizi/textprep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

arabizi::MappingTable load_mapping(const std::string& mapping_path) {
    if (mapping_path.empty()) return arabizi::MappingTable::defaults();
    return arabizi::MappingTable::load_file(mapping_path);
}

std::unique_ptr<std::ifstream> open_input(const std::string& path) {
    auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in) throw arabizi::IoFailure("cannot open input file '" + path + "'");
    return in;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

struct LoadedModel {
    std::optional<arabizi::FrequencyModel> frequency;
    std::optional<arabizi::NGramModel> ngram;

    arabizi::ModelHandle handle() const {
        if (frequency) return arabizi::ModelHandle(*frequency);
        return arabizi::ModelHandle(*ngram);
    }
};

LoadedModel load_model_for(const std::string& path, arabizi::Backend backend) {
    LoadedModel m;
    const arabizi::ModelKind kind = arabizi::peek_model_kind(path);
    if (backend == arabizi::Backend::SimpleSearch) {
        if (kind != arabizi::ModelKind::Frequency) {
            throw arabizi::CorruptModel("backend 'simple' needs a frequency model, '" + path +
                                        "' is an n-gram model");
        }
        m.frequency = arabizi::FrequencyModel::load_file(path);
    } else {
        if (kind != arabizi::ModelKind::NGram) {
            throw arabizi::CorruptModel("backend 'ngram' needs an n-gram model, '" + path +
                                        "' is a frequency model");
        }
        m.ngram = arabizi::NGramModel::load_file(path);
    }
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arabizi-to-Arabic transliteration toolkit"};
    app.require_subcommand(1);

    std::string mapping_path;
    std::string model_path;
    std::string input_path;
    std::string output_path;
    std::string gold_path;
    std::string corpus_path;
    std::string backend_name = "simple";
    std::size_t cap = arabizi::kDefaultCandidateCap;
    std::uint64_t seed = 42;
    int order = 2;
    bool count_only = false;
    bool explain = false;
    std::string word;
    std::vector<int> fractions = {1, 5, 10, 25, 50, 75, 100};
    std::vector<std::string> backend_names = {"simple", "ngram"};

    auto add_mapping_flag = [&mapping_path](CLI::App* cmd) {
        cmd->add_option("--mapping", mapping_path, "mapping file overriding the built-in table")
            ->envname("ARABIZI_MAPPING");
    };

    CLI::App* prepare = app.add_subcommand(
        "prepare", "filter raw lines down to Arabic-only messages, normalized");
    prepare->add_option("input", input_path, "input file (default: stdin)");
    prepare->add_option("-o,--output", output_path, "output file (default: stdout)");

    CLI::App* build = app.add_subcommand("build-model", "build a scoring model from a corpus");
    build->add_option("input", input_path, "prepared corpus file (default: stdin)");
    build->add_option("-o,--output", model_path, "model file to write")->required();
    build->add_option("--backend", backend_name, "simple (frequency) or ngram")
        ->check(CLI::IsMember({"simple", "ngram"}));
    build->add_option("--order", order, "n-gram order (ngram backend)")
        ->check(CLI::Range(1, arabizi::NGramModel::kMaxOrder));

    CLI::App* cands = app.add_subcommand("candidates", "list Arabic candidates for one word");
    cands->add_option("word", word, "arabizi word")->required();
    cands->add_flag("--count-only", count_only, "print only the candidate count");
    cands->add_option("--cap", cap, "candidate cap");
    add_mapping_flag(cands);

    CLI::App* translit = app.add_subcommand("translit", "transliterate arabizi lines from stdin");
    translit->add_option("--model", model_path, "model file")->required();
    translit->add_option("--backend", backend_name, "simple or ngram")
        ->check(CLI::IsMember({"simple", "ngram"}));
    translit->add_option("--cap", cap, "candidate cap");
    translit->add_flag("--explain", explain, "per-word TSV trace on stderr");
    translit->add_option("input", input_path, "input file (default: stdin)");
    add_mapping_flag(translit);

    CLI::App* evaluate = app.add_subcommand("evaluate", "score a gold TSV against a model");
    evaluate->add_option("--gold", gold_path, "gold TSV file")->required();
    evaluate->add_option("--model", model_path, "model file")->required();
    evaluate->add_option("--backend", backend_name, "simple or ngram")
        ->check(CLI::IsMember({"simple", "ngram"}));
    evaluate->add_option("--cap", cap, "candidate cap");
    add_mapping_flag(evaluate);

    CLI::App* grid = app.add_subcommand(
        "grid", "corpus-fraction evaluation grid over both backends");
    grid->add_option("--corpus", corpus_path, "prepared training corpus")->required();
    grid->add_option("--gold", gold_path, "gold TSV file")->required();
    grid->add_option("--fractions", fractions, "corpus percentages")
        ->check(CLI::IsMember({1, 5, 10, 25, 50, 75, 100}));
    grid->add_option("--backends", backend_names, "backends to evaluate")
        ->check(CLI::IsMember({"simple", "ngram"}));
    grid->add_option("--seed", seed, "slicing seed");
    grid->add_option("--order", order, "n-gram order");
    grid->add_option("--cap", cap, "candidate cap");
    add_mapping_flag(grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (prepare->parsed()) {
            std::unique_ptr<std::ifstream> file;
            std::istream* in = &std::cin;
            if (!input_path.empty()) {
                file = open_input(input_path);
                in = file.get();
            }
            std::unique_ptr<std::ofstream> ofile;
            std::ostream* out = &std::cout;
            if (!output_path.empty()) {
                ofile = std::make_unique<std::ofstream>(output_path, std::ios::binary);
                if (!*ofile) throw arabizi::IoFailure("cannot write '" + output_path + "'");
                out = ofile.get();
            }
            const arabizi::FilterStats stats = arabizi::filter_arabic_corpus(*in, *out);
            std::cerr << "kept=" << stats.kept << " dropped=" << stats.dropped << "\n";
            return kExitOk;
        }

        if (build->parsed()) {
            std::unique_ptr<std::ifstream> file;
            std::istream* in = &std::cin;
            if (!input_path.empty()) {
                file = open_input(input_path);
                in = file.get();
            }
            if (backend_name == "simple") {
                arabizi::FrequencyModel::build(*in).save_file(model_path);
            } else {
                arabizi::NGramModel::build(*in, order).save_file(model_path);
            }
            return kExitOk;
        }

        if (cands->parsed()) {
            const arabizi::MappingTable table = load_mapping(mapping_path);
            const arabizi::CandidateSet set = arabizi::generate(word, table, cap);
            if (count_only) {
                std::cout << set.candidates.size() << "\n";
            } else {
                for (std::size_t i = 0; i < set.candidates.size(); ++i) {
                    std::cout << (i + 1) << '\t' << set.candidates[i] << "\n";
                }
                if (set.truncated) std::cerr << "candidate list truncated at " << cap << "\n";
            }
            return kExitOk;
        }

        if (translit->parsed()) {
            const arabizi::MappingTable table = load_mapping(mapping_path);
            const arabizi::Backend backend = arabizi::backend_from_string(backend_name);
            const LoadedModel model = load_model_for(model_path, backend);
            const arabizi::SelectionPolicy policy{backend, arabizi::Fallback::PreferenceOrder};

            std::unique_ptr<std::ifstream> file;
            std::istream* in = &std::cin;
            if (!input_path.empty()) {
                file = open_input(input_path);
                in = file.get();
            }
            std::string line;
            while (std::getline(*in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                const arabizi::MessageResult result =
                    arabizi::transliterate_message(line, table, policy, model.handle(), cap);
                std::cout << result.output << "\n";
                std::cout.flush();
                for (const std::string& diag : result.diagnostics) {
                    std::cerr << "warning: " << diag << "\n";
                }
                if (explain) {
                    for (const arabizi::TransliterationResult& w : result.words) {
                        std::cerr << w.source << '\t' << w.chosen << '\t' << w.score << '\t'
                                  << (w.matched ? "matched" : "fallback") << '\t'
                                  << w.candidate_count << "\n";
                    }
                }
            }
            return kExitOk;
        }

        if (evaluate->parsed()) {
            const arabizi::MappingTable table = load_mapping(mapping_path);
            const arabizi::Backend backend = arabizi::backend_from_string(backend_name);
            const LoadedModel model = load_model_for(model_path, backend);
            const arabizi::SelectionPolicy policy{backend, arabizi::Fallback::PreferenceOrder};
            const std::vector<arabizi::GoldPair> pairs = arabizi::load_gold_file(gold_path);
            const arabizi::EvalReport report =
                arabizi::evaluate(pairs, table, policy, model.handle(), cap);
            std::cout << arabizi::report_to_json(report) << "\n";
            return kExitOk;
        }

        if (grid->parsed()) {
            const arabizi::MappingTable table = load_mapping(mapping_path);
            std::vector<arabizi::Backend> backends;
            for (const std::string& name : backend_names) {
                backends.push_back(arabizi::backend_from_string(name));
            }
            const std::vector<arabizi::GoldPair> pairs = arabizi::load_gold_file(gold_path);
            const auto corpus_file = open_input(corpus_path);
            const std::vector<std::string> corpus = read_lines(*corpus_file);
            const arabizi::EvalReport report = arabizi::run_grid(
                corpus, pairs, table, fractions, backends, seed, order, cap);
            std::cout << arabizi::report_to_json(report) << "\n";
            std::cerr << arabizi::render_grid_table(report);
            return kExitOk;
        }
    } catch (const arabizi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
