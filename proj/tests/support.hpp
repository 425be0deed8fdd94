#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "igt/igt.hpp"

namespace support {

inline std::string data_path(const std::string& name) { return std::string(IGT_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_data(const std::string& name) { return read_file(data_path(name)); }

inline std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  for (auto l : igt::text::split_lines(s)) out.emplace_back(l);
  return out;
}

struct CommandResult {
  int status = -1;
  std::string out;
};

// Runs a shell command, capturing standard output.
inline CommandResult run(const std::string& cmd) {
  CommandResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

inline std::string cli() { return IGT_CLI_PATH; }

// ---------------------------------------------------------------------------
// Random records whose gloss lines are produced by the tokenizer itself, so
// they are valid by construction.

class RecordGen {
 public:
  explicit RecordGen(std::uint64_t seed) : rng_(seed) {}

  igt::IgtRecord next(std::size_t n) {
    igt::IgtRecord r;
    r.id = "r" + std::to_string(n) + (coin() ? messy(3) : "");
    r.lang = igt::LanguageTag(lang());
    const bool has_gloss = coin(0.8);
    if (coin(0.7)) r.source_text = messy(pick(0, 30));
    if (has_gloss) {
      const std::size_t words = pick(1, 8);
      const bool punct = coin();
      if (coin(0.6)) r.gloss_src = igt::tokenize_gloss(gloss(words, punct), igt::LemmaSide::Source);
      r.gloss_tgt = igt::tokenize_gloss(gloss(words, punct), igt::LemmaSide::Target);
    }
    if (coin(0.8) || !r.has_content()) r.target_text = messy(pick(0, 30));
    if (coin()) r.provenance = "odin:" + std::to_string(pick(1, 9999));
    return r;
  }

  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  std::string lemma() {
    std::string s;
    const std::size_t len = pick(2, 7);
    for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + pick(0, 25));
    if (coin(0.2)) s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
  }

  std::string label() {
    static const std::vector<std::string> labels{"NOM", "ACC", "PST", "3", "SG", "PL", "PROG", "AOR", "3SG", "DAT", "POSS"};
    return labels[pick(0, labels.size() - 1)];
  }

  std::string gloss(std::size_t words, bool punct) {
    static const char joiners[] = {'-', '.', '='};
    std::string out;
    for (std::size_t w = 0; w < words; ++w) {
      if (w) out += ' ';
      out += coin(0.85) ? lemma() : label();
      const std::size_t k = pick(0, 3);
      for (std::size_t i = 0; i < k; ++i) out += joiners[pick(0, 2)] + label();
    }
    if (punct) out += ".?!,"[pick(0, 3)];
    return out;
  }

 private:
  std::string lang() {
    std::string s(3, 'a');
    for (auto& c : s) c = static_cast<char>('a' + pick(0, 25));
    return s;
  }

  // Text with the characters the serializer has to escape.
  std::string messy(std::size_t len) {
    static const std::vector<std::string> pieces{"a", "b", "Z", " ", "\t", "\n", "\\", "\\t", "=", "ü", "ş", "⟦", "'", ".", "\r"};
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += pieces[pick(0, pieces.size() - 1)];
    return s;
  }

  std::mt19937_64 rng_;
};

}  // namespace support
