// cli_pipeline.cpp -- drives the installed CLI binary end to end: exit
// codes, stream discipline, and the pipe composition
// prepare | build-model | translit against the in-process pipeline.
// argv[1] is the path to the binary.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "arabizi/langmodel.hpp"
#include "arabizi/selector.hpp"
#include "arabizi/textprep.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s: %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CmdResult run(const std::string& cmd, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt";
    const fs::path err_file = dir / "stderr.txt";
    const std::string full =
        cmd + " > " + out_file.string() + " 2> " + err_file.string();
    const int status = std::system(full.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_pipeline <path-to-arabizi-binary>\n");
        return 2;
    }
    const std::string bin = argv[1];
    const fs::path dir =
        fs::temp_directory_path() / ("arabizi_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    // candidate listing
    {
        const CmdResult r = run(bin + " candidates kraht --count-only", dir);
        check(r.exit_code == 0 && r.out == "32\n", "candidates kraht --count-only prints 32");
    }
    {
        const CmdResult r = run(bin + " candidates hiati", dir);
        int lines = 0;
        for (char c : r.out) lines += c == '\n';
        check(r.exit_code == 0 && lines == 16 && r.out.rfind("1\t", 0) == 0,
              "candidates hiati prints 16 ranked lines");
    }

    // usage errors exit 1
    {
        const CmdResult r = run(bin + " translit", dir);
        check(r.exit_code == 1, "translit without --model is a usage error");
    }
    {
        const CmdResult r = run(bin + " nosuchcommand", dir);
        check(r.exit_code == 1, "unknown subcommand is a usage error");
    }

    // data errors exit 2
    {
        write(dir / "bad.model", "#FREQ v1 total=1 vocab=1 sha256=deadbeef\nمطر\t1\n");
        write(dir / "in.txt", "hiati\n");
        const CmdResult r = run(bin + " translit --model " + (dir / "bad.model").string() +
                                    " < " + (dir / "in.txt").string(),
                                dir);
        check(r.exit_code == 2, "corrupt model is a data error");
    }

    // evaluation: four pairs, three correct
    {
        std::vector<std::string> corpus_lines;
        for (int i = 0; i < 5; ++i) corpus_lines.push_back("حياتي");
        for (int i = 0; i < 4; ++i) corpus_lines.push_back("كرهت");
        for (int i = 0; i < 3; ++i) corpus_lines.push_back("مطر");
        for (int i = 0; i < 2; ++i) corpus_lines.push_back("بك");
        std::string corpus;
        for (const std::string& l : corpus_lines) corpus += l + "\n";
        write(dir / "corpus.txt", corpus);
        write(dir / "gold.tsv",
              "hiati\tحياتي\nkraht\tكرهت\nmatar\tمطر\nbik\tبيك\n");

        CmdResult r = run(bin + " build-model " + (dir / "corpus.txt").string() + " -o " +
                              (dir / "eval.freq").string(),
                          dir);
        check(r.exit_code == 0, "build-model succeeds");

        r = run(bin + " evaluate --gold " + (dir / "gold.tsv").string() + " --model " +
                    (dir / "eval.freq").string(),
                dir);
        check(r.exit_code == 0 && r.out.find("\"accuracy\": 0.75") != std::string::npos,
              "evaluate reports accuracy 0.75");
    }

    // pipe composition equals the in-process pipeline
    {
        const std::string raw =
            "مطر مطر جميل\n"
            "kraht stays latin\n"
            "حياتي حياتي حياتي!!\n"
            "راااائع مطر\n"
            "mixed مطر latin\n";
        write(dir / "raw.txt", raw);
        write(dir / "words.txt", "hiati kraht!\nmatar\n");

        CmdResult r = run(bin + " prepare < " + (dir / "raw.txt").string() + " > " +
                              (dir / "prepared.txt").string(),
                          dir);
        check(r.exit_code == 0 && r.err.find("kept=") != std::string::npos,
              "prepare reports kept/dropped");

        r = run(bin + " build-model " + (dir / "prepared.txt").string() + " -o " +
                    (dir / "pipe.freq").string(),
                dir);
        check(r.exit_code == 0, "build-model over prepared corpus succeeds");

        r = run(bin + " translit --model " + (dir / "pipe.freq").string() + " < " +
                    (dir / "words.txt").string() + " > " + (dir / "pipe.out").string(),
                dir);
        check(r.exit_code == 0, "translit over the piped model succeeds");
        const std::string piped = slurp(dir / "pipe.out");

        // same thing in process
        std::istringstream raw_in(raw);
        std::ostringstream prepared;
        arabizi::filter_arabic_corpus(raw_in, prepared);
        std::istringstream prepared_in(prepared.str());
        const arabizi::FrequencyModel model = arabizi::FrequencyModel::build(prepared_in);
        const arabizi::MappingTable table = arabizi::MappingTable::defaults();
        std::string expected;
        for (const std::string& line : {std::string("hiati kraht!"), std::string("matar")}) {
            expected += arabizi::transliterate_message(
                            line, table,
                            arabizi::SelectionPolicy{arabizi::Backend::SimpleSearch,
                                                     arabizi::Fallback::PreferenceOrder},
                            arabizi::ModelHandle(model))
                            .output +
                        "\n";
        }
        check(slurp(dir / "prepared.txt") == prepared.str(),
              "prepare output matches the in-process filter");
        check(piped == expected, "piped pipeline output matches the in-process pipeline");
    }

    // mapping override via flag and environment
    {
        write(dir / "tiny.map",
              "b\tinitial\tب\nb\tmedial\tب\nb\tfinal\tب\nb\tsole\tب\n"
              "a\tinitial\tأ\na\tmedial\tا|NULL\na\tfinal\tة|ا\na\tsole\tأ\n");
        CmdResult r = run(bin + " candidates ba --mapping " + (dir / "tiny.map").string(), dir);
        check(r.exit_code == 0 && r.out.find("بة") != std::string::npos,
              "--mapping overrides the built-in table");

        r = run("ARABIZI_MAPPING=" + (dir / "tiny.map").string() + " " + bin + " candidates ba",
                dir);
        check(r.exit_code == 0 && r.out.find("بة") != std::string::npos,
              "ARABIZI_MAPPING is honored");

        r = run(bin + " candidates kraht --mapping " + (dir / "tiny.map").string(), dir);
        check(r.exit_code == 2, "unknown symbols under a custom mapping are data errors");
    }

    // grid smoke test
    {
        std::string corpus;
        for (int i = 0; i < 30; ++i) corpus += "حياتي " + std::to_string(i) + "\n";
        write(dir / "grid_corpus.txt", corpus);
        write(dir / "grid_gold.tsv", "hiati\tحياتي\n");
        const CmdResult r = run(bin + " grid --corpus " + (dir / "grid_corpus.txt").string() +
                                    " --gold " + (dir / "grid_gold.tsv").string() +
                                    " --fractions 25 --fractions 100 --backends simple",
                                dir);
        check(r.exit_code == 0 && r.out.find("\"grid\"") != std::string::npos &&
                  r.err.find("simple") != std::string::npos,
              "grid emits the JSON report on stdout and the table on stderr");
    }

    fs::remove_all(dir);
    if (failures) {
        std::printf("%d CLI check(s) failed\n", failures);
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
}
