// Copyright 2026 The amtool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the synthetic mini-corpus in all four graphbank formats.
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "amtool/minicorpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic mini-corpus"};
  std::string out_dir;
  size_t count = 60;
  uint64_t seed = 7;
  app.add_option("out_dir", out_dir, "Directory for dm.sdp, pas.sdp, psd.sdp and eds.eds")->required();
  app.add_option("--count", count, "Sentences per graphbank");
  app.add_option("--seed", seed, "Random seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  std::filesystem::create_directories(out_dir);
  for (auto bank : {amtool::Bank::kDM, amtool::Bank::kPAS, amtool::Bank::kPSD, amtool::Bank::kEDS}) {
    std::string name(amtool::BankName(bank));
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    name += bank == amtool::Bank::kEDS ? ".eds" : ".sdp";
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << amtool::WriteCorpus(amtool::MiniCorpus(bank, count, seed));
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
  }
  return 0;
}
