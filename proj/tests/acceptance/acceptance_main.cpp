// Verification gate: runs the pinned suite, prints one line per criterion,
// and repeats the run to confirm byte-identical CSV output.

#include <cstdio>
#include <cstring>
#include <string>

#include "sbl/suite.hpp"

int main(int argc, char** argv) {
    std::string outdir = "acceptance_results";
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--out") == 0) outdir = argv[i + 1];

    std::printf("running verification suite into %s\n", outdir.c_str());
    const sbl::SuiteResult suite = sbl::run_suite(outdir, 0, true);

    bool all = true;
    for (const auto& crit : sbl::fold_into_criteria(suite)) {
        std::printf("criterion %2d: %-44s %s  (%s)\n", crit.index, crit.name.c_str(),
                    crit.pass ? "PASS" : "FAIL", crit.detail.c_str());
        all = all && crit.pass;
    }

    const sbl::SuiteResult rerun = sbl::run_suite(outdir + "_rerun", 0, false);
    std::string detail;
    const bool identical = sbl::compare_csv_dirs(outdir, outdir + "_rerun", detail);
    std::printf("criterion 11: %-44s %s  (%s)\n", "byte-identical rerun",
                identical ? "PASS" : "FAIL", detail.c_str());
    all = all && identical && rerun.all_pass;

    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all ? 0 : 1;
}
