#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "emospace/embeddings.hpp"
#include "emospace/model.hpp"
#include "emospace/text_io.hpp"
#include "test_support.hpp"

namespace {

std::string cli_path() {
    if (const char* env = std::getenv("EMOSPACE_CLI")) return env;
#ifdef EMOSPACE_CLI_PATH
    return EMOSPACE_CLI_PATH;
#else
    return "./emospace";
#endif
}

int run_cli(const std::string& args, const std::string& log) {
    std::string cmd = "\"" + cli_path() + "\" " + args + " >" + log + " 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli: usage errors exit with 2") {
    testutil::TempDir dir;
    std::string log = dir.file("log.txt").string();
    CHECK(run_cli("", log) == 2);
    CHECK(run_cli("frobnicate", log) == 2);
    CHECK(run_cli("train --embeddings missing.txt", log) == 2);  // no --out
    CHECK(run_cli("synth --out x --unknown-flag 3", log) == 2);
    CHECK(run_cli("--help", log) == 0);
}

TEST_CASE("cli: entangle projected without model is a usage error") {
    testutil::TempDir dir;
    std::string log = dir.file("log.txt").string();
    auto data = dir.path() / "data";
    REQUIRE(run_cli("synth --out " + data.string() +
                        " --d 8 --vocab 16 --planted 2 5 --transcripts 3 "
                        "--tokens 8 --seed 1",
                    log) == 0);
    int code = run_cli("entangle --embeddings " +
                           (data / "embeddings.txt").string() + " --emolex " +
                           (data / "emolex.tsv").string() +
                           " --space projected --out " +
                           dir.file("m.csv").string(),
                       log);
    CHECK(code == 2);
}

TEST_CASE("cli: exit codes map error kinds") {
    testutil::TempDir dir;
    std::string log = dir.file("log.txt").string();

    // missing file -> I/O error (5)
    CHECK(run_cli("dims --model " + dir.file("nope.ckpt").string() +
                      " --out " + dir.file("d.csv").string(),
                  log) == 5);

    // malformed data -> format error (3)
    auto bad = dir.file("bad.ckpt");
    testutil::write_text(bad, "garbage\n");
    CHECK(run_cli("dims --model " + bad.string() + " --out " +
                      dir.file("d.csv").string(),
                  log) == 3);

    // runaway training -> numeric error (4)
    auto data = dir.path() / "data";
    REQUIRE(run_cli("synth --out " + data.string() +
                        " --d 8 --vocab 16 --planted 2 --transcripts 5 "
                        "--tokens 100 --seed 1",
                    log) == 0);
    CHECK(run_cli("train --embeddings " + (data / "embeddings.txt").string() +
                      " --corpus " + (data / "corpus").string() + " --out " +
                      dir.file("m.ckpt").string() +
                      " --seed 1 --epochs 50 --lr 1e9",
                  log) == 4);
}

TEST_CASE("cli: synth -> train -> eval -> reports pipeline") {
    testutil::TempDir dir;
    std::string log = dir.file("log.txt").string();
    auto data = dir.path() / "data";

    REQUIRE(run_cli("synth --out " + data.string() +
                        " --d 8 --vocab 24 --planted 2 5 --transcripts 8 "
                        "--tokens 30 --noise-sd 0.2 --seed 3",
                    log) == 0);
    CHECK(std::filesystem::exists(data / "manifest.json"));

    std::string emb = (data / "embeddings.txt").string();
    std::string corpus = (data / "corpus").string();
    std::string ckpt = dir.file("model.ckpt").string();
    REQUIRE(run_cli("train --embeddings " + emb + " --corpus " + corpus +
                        " --out " + ckpt + " --seed 3 --epochs 300 --lr 0.15",
                    log) == 0);
    CHECK(std::filesystem::exists(ckpt));
    CHECK(std::filesystem::exists(ckpt + ".history.csv"));
    CHECK(std::filesystem::exists(ckpt + ".manifest.json"));
    std::string history = testutil::read_text(ckpt + ".history.csv");
    CHECK(history.starts_with("epoch,train_loss,val_ccc,sigma\n"));

    std::string eval_csv = dir.file("eval.csv").string();
    REQUIRE(run_cli("eval --model " + ckpt + " --embeddings " + emb +
                        " --corpus " + corpus +
                        " --split 0.6,0.2,0.2 --seed 3 --subset val --out " +
                        eval_csv,
                    log) == 0);
    // summary line reports validation ccc above the planted-signal bar
    std::string summary = testutil::read_text(log);
    auto ccc_pos = summary.rfind("ccc ");
    REQUIRE(ccc_pos != std::string::npos);
    double val_ccc = std::stod(summary.substr(ccc_pos + 4));
    CHECK(val_ccc > 0.8);

    REQUIRE(run_cli("eval --model " + ckpt + " --embeddings " + emb +
                        " --corpus " + corpus + " --out " + eval_csv,
                    log) == 0);
    std::string eval_text = testutil::read_text(eval_csv);
    CHECK(eval_text.starts_with("id,n,ccc,mse\n"));
    // one row per transcript + header
    CHECK(std::count(eval_text.begin(), eval_text.end(), '\n') == 9);

    // resampled evaluation mode also runs
    REQUIRE(run_cli("eval --model " + ckpt + " --embeddings " + emb +
                        " --corpus " + corpus + " --out " + eval_csv +
                        " --resample 0.5",
                    log) == 0);

    std::string scatter_csv = dir.file("scatter.csv").string();
    std::string scatter_svg = dir.file("scatter.svg").string();
    REQUIRE(run_cli("scatter --model " + ckpt + " --embeddings " + emb +
                        " --polarity " + (data / "polarity.tsv").string() +
                        " --k 3 --out " + scatter_csv + " --svg " +
                        scatter_svg,
                    log) == 0);
    std::string scatter_text = testutil::read_text(scatter_csv);
    CHECK(scatter_text.starts_with("word,x,y,polarity\n"));
    CHECK(std::count(scatter_text.begin(), scatter_text.end(), '\n') == 7);
    CHECK(std::filesystem::exists(scatter_svg));

    for (const char* space : {"raw", "projected"}) {
        std::string mat_csv = dir.file(std::string("ent-") + space + ".csv")
                                  .string();
        REQUIRE(run_cli("entangle --embeddings " + emb + " --emolex " +
                            (data / "emolex.tsv").string() + " --model " +
                            ckpt + " --space " + space + " --out " + mat_csv +
                            " --svg " + mat_csv + ".svg --json " + mat_csv +
                            ".json --seed 3",
                        log) == 0);
        std::string mat = testutil::read_text(mat_csv);
        CHECK(mat.starts_with("label,Joy,Trust,Anticipation,Surprise,Fear,"
                              "Anger,Disgust,Sadness\n"));
    }

    std::string feel_csv = dir.file("feel.csv").string();
    REQUIRE(run_cli("feelings --embeddings " + emb + " --emolex " +
                        (data / "emolex.tsv").string() + " --model " + ckpt +
                        " --space projected --pairs 20 --out " + feel_csv +
                        " --seed 3",
                    log) == 0);
    CHECK(testutil::read_text(feel_csv)
              .starts_with("label,Love,Optimism,Submission,Awe,Remorse,"
                           "Disapproval,Contempt,Aggressiveness\n"));
    CHECK(std::filesystem::exists(feel_csv + ".manifest.json"));
}

TEST_CASE("cli: dims on a zero checkpoint writes all-zero scores") {
    testutil::TempDir dir;
    std::string log = dir.file("log.txt").string();

    emospace::ModelParams zero;
    zero.W_h = Eigen::MatrixXd::Zero(4, 4);
    zero.W_v = Eigen::MatrixXd::Zero(4, 4);
    zero.b_h = Eigen::VectorXd::Zero(4);
    zero.W_o = Eigen::VectorXd::Zero(4);
    auto ckpt = dir.file("zero.ckpt");
    emospace::save_checkpoint(zero, ckpt);

    auto csv = dir.file("dims.csv");
    REQUIRE(run_cli("dims --model " + ckpt.string() + " --out " + csv.string(),
                    log) == 0);
    CHECK(testutil::read_text(csv) ==
          "dim,score_literal,score_chain\n0,0,0\n1,0,0\n2,0,0\n3,0,0\n");
}

TEST_CASE("cli: EMOSPACE_SEED sets the default seed") {
    testutil::TempDir dir;
    std::string log = dir.file("log.txt").string();
    auto a = dir.path() / "a";
    auto b = dir.path() / "b";
    auto c = dir.path() / "c";

    std::string base = " synth --d 8 --vocab 16 --planted 1 --transcripts 2 "
                       "--tokens 8 --out ";
    std::string cli = "\"" + cli_path() + "\"";
    int status = std::system(("EMOSPACE_SEED=9 " + cli + base + a.string() +
                              " >" + log + " 2>&1")
                                 .c_str());
    REQUIRE(WEXITSTATUS(status) == 0);
    status = std::system(("EMOSPACE_SEED=9 " + cli + base + b.string() + " >" +
                          log + " 2>&1")
                             .c_str());
    REQUIRE(WEXITSTATUS(status) == 0);
    // explicit --seed wins over the environment
    status = std::system(("EMOSPACE_SEED=9 " + cli + base + c.string() +
                          " --seed 4 >" + log + " 2>&1")
                             .c_str());
    REQUIRE(WEXITSTATUS(status) == 0);

    CHECK(testutil::read_text(a / "embeddings.txt") ==
          testutil::read_text(b / "embeddings.txt"));
    CHECK(testutil::read_text(a / "embeddings.txt") !=
          testutil::read_text(c / "embeddings.txt"));
}
