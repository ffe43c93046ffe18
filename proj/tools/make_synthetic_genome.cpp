// Writes the deterministic 10 Mbp synthetic test genome as FASTA.
//   make_synthetic_genome OUT.fa [--seed N]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "genodist/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Deterministic synthetic genome with planted periodic motifs"};
  std::string out_path;
  auto spec = genodist::default_synthetic_genome();
  app.add_option("out", out_path, "Output FASTA")->required();
  app.add_option("--seed", spec.seed, "RNG seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << '\n';
    return 2;
  }
  genodist::write_synthetic_genome(spec, out);
  return out ? 0 : 2;
}
