// orbinerve: command line front end for the workbench.
//
//   orbinerve <command> [entity] [-i file] [--ring Z|Q] [--cap n] [--format table|tsv] [--compare entity]
//
// Without -i only the builtin entities (trivial, Z2, Z3, Z4, S3, S3X, ptS3)
// are available. "-i -" reads the document from standard input.

#include "orbinerve/workbench/input.hpp"
#include "orbinerve/workbench/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

using namespace orbinerve;
using namespace orbinerve::workbench;

namespace {

bool read_all(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoids, their nerves and Hochschild, cyclic and periodic homology"};
  app.set_version_flag("--version", "orbinerve 1.0");

  Invocation inv;
  std::string input_path;
  std::string ring_flag;
  std::size_t cap = 0;
  app.add_option("command", inv.command, "validate, inertia, homology, hh, hc, hp, verify or cr")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("entity", inv.entity, "name of a group, action, groupoid or sector list");
  app.add_option("-i,--input", input_path, "workbench document, '-' for standard input");
  app.add_option("--ring", ring_flag, "coefficient ring")->check(CLI::IsMember({"Z", "Q"}));
  auto* cap_opt = app.add_option("--cap", cap, "highest simplicial level to enumerate")->check(CLI::Range(1, 12));
  std::string format = "table";
  app.add_option("--format", format, "aligned table or tab-separated rows")->check(CLI::IsMember({"table", "tsv"}));
  app.add_option("--compare", inv.compare, "cr: groupoid whose periodic homology is compared");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!ring_flag.empty()) inv.ring = ring_flag == "Q" ? Ring::kRationals : Ring::kIntegers;
  if (*cap_opt) inv.cap = cap;
  inv.format = format == "tsv" ? Format::kTsv : Format::kTable;

  WorkbenchInput doc;
  try {
    std::string text;
    if (!input_path.empty() && !read_all(input_path, text)) {
      std::cerr << "error: cannot read " << input_path << '\n';
      return kExitUsage;
    }
    doc = load_document(text);
  } catch (const InputError& e) {
    std::cerr << (input_path.empty() ? "<prelude>" : input_path) << ':' << e.what() << '\n';
    return kExitUsage;
  }
  return run(inv, doc, std::cout, std::cerr);
}
