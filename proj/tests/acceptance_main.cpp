#include <CLI11.hpp>
#include <iostream>

#include "koszul/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "seed for the randomized criteria");
  CLI11_PARSE(app, argc, argv);
  bool all = true;
  koszul::run_acceptance(seed, [&](const koszul::CriterionResult& r) {
    std::cout << koszul::criterion_line(r) << std::endl;
    all = all && r.pass;
  });
  return all ? 0 : 1;
}
