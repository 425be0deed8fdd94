#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "igt/error.hpp"
#include "igt/gloss_tokenizer.hpp"
#include "igt/igt_model.hpp"
#include "igt/text.hpp"

// Canonical corpus format: one record per line, tab-separated key=value
// fields in the fixed order id, lang, src, gloss_src, gloss_tgt, tgt, prov.
// Absent optional fields (and an empty prov) are omitted. Tabs, newlines and
// backslashes inside values are escaped as \t, \n, \\ (\r as \r).
namespace igt {

namespace detail {

inline std::string escape_value(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string unescape_value(std::string_view s, std::size_t offset, std::string_view key) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (i + 1 >= s.size())
      throw Error(ErrorCode::MalformedRecord,
                  "dangling backslash at byte " + std::to_string(offset + i) + " in field '" + std::string(key) + "'");
    switch (s[++i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default:
        throw Error(ErrorCode::MalformedRecord, "unknown escape at byte " + std::to_string(offset + i - 1) +
                                                    " in field '" + std::string(key) + "'");
    }
  }
  return out;
}

}  // namespace detail

inline std::string serialize_record(const IgtRecord& r) {
  std::string out = "id=" + detail::escape_value(r.id);
  out += "\tlang=" + r.lang.code();
  if (r.source_text) out += "\tsrc=" + detail::escape_value(*r.source_text);
  if (r.gloss_src) out += "\tgloss_src=" + detail::escape_value(r.gloss_src->render());
  if (r.gloss_tgt) out += "\tgloss_tgt=" + detail::escape_value(r.gloss_tgt->render());
  if (r.target_text) out += "\ttgt=" + detail::escape_value(*r.target_text);
  if (!r.provenance.empty()) out += "\tprov=" + detail::escape_value(r.provenance);
  return out;
}

/// Inverse of serialize_record. Gloss lines are re-tokenized with `table`.
inline IgtRecord parse_record(std::string_view line, const NormalizationTable& table = default_table()) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  IgtRecord r;
  bool have_id = false, have_lang = false;
  std::size_t offset = 0;
  static constexpr std::string_view order[] = {"id", "lang", "src", "gloss_src", "gloss_tgt", "tgt", "prov"};
  std::size_t next_slot = 0;

  for (const auto& field : text::split(line, '\t')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::MalformedRecord, "field at byte " + std::to_string(offset) + " has no '='");
    const std::string key = field.substr(0, eq);
    std::size_t slot = next_slot;
    while (slot < std::size(order) && order[slot] != key) ++slot;
    if (slot == std::size(order))
      throw Error(ErrorCode::MalformedRecord,
                  "unknown, repeated or out-of-order field '" + key + "' at byte " + std::to_string(offset));
    next_slot = slot + 1;
    const std::size_t value_offset = offset + eq + 1;
    std::string value = detail::unescape_value(std::string_view(field).substr(eq + 1), value_offset, key);
    try {
      if (key == "id") {
        r.id = std::move(value);
        have_id = true;
      } else if (key == "lang") {
        r.lang = LanguageTag(value);
        have_lang = true;
      } else if (key == "src") {
        r.source_text = std::move(value);
      } else if (key == "gloss_src") {
        r.gloss_src = tokenize_gloss(value, table, LemmaSide::Source);
      } else if (key == "gloss_tgt") {
        r.gloss_tgt = tokenize_gloss(value, table, LemmaSide::Target);
      } else if (key == "tgt") {
        r.target_text = std::move(value);
      } else {
        r.provenance = std::move(value);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MalformedRecord) throw;
      throw Error(ErrorCode::MalformedRecord,
                  "field '" + key + "' at byte " + std::to_string(value_offset) + ": " + e.what());
    }
    offset += field.size() + 1;
  }
  if (!have_id) throw Error(ErrorCode::MalformedRecord, "missing field 'id' at byte 0");
  if (!have_lang) throw Error(ErrorCode::MalformedRecord, "missing field 'lang'");
  check_record(r, ErrorCode::MalformedRecord);
  return r;
}

inline std::vector<IgtRecord> read_corpus(std::istream& in, const NormalizationTable& table = default_table()) {
  std::vector<IgtRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (lineno == 1) view = text::strip_bom(view);
    if (text::trim(view).empty()) continue;
    try {
      out.push_back(parse_record(view, table));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.message());
    }
  }
  return out;
}

inline void write_corpus(std::ostream& out, const std::vector<IgtRecord>& records) {
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

// ---------------------------------------------------------------------------

namespace detail {

// Fisher-Yates driven by mt19937_64 with rejection sampling, so the
// permutation for a seed is identical across standard libraries.
template <class T>
void portable_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t draw;
    do draw = rng();
    while (draw >= limit);
    std::swap(items[i - 1], items[draw % bound]);
  }
}

}  // namespace detail

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

/// Seeded shuffle then contiguous slicing: floor(n*train), floor(n*valid),
/// remainder to test.
inline CorpusSplit split_corpus(std::vector<IgtRecord> records, SplitRatios ratios, std::uint64_t seed) {
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 || std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::BadRatios, "ratios must be non-negative and sum to 1 (got " + std::to_string(ratios.train) +
                                          ", " + std::to_string(ratios.validation) + ", " +
                                          std::to_string(ratios.test) + ")");
  const std::size_t n = records.size();
  // The epsilon keeps products like 10 * 0.3 = 2.9999999999999996 at 3.
  auto part = [n](double r) { return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9)); };
  const std::size_t n_train = std::min(part(ratios.train), n);
  const std::size_t n_valid = std::min(part(ratios.validation), n - n_train);

  detail::portable_shuffle(records, seed);
  CorpusSplit split;
  auto first = std::make_move_iterator(records.begin());
  split.train.assign(first, first + n_train);
  split.validation.assign(first + n_train, first + n_train + n_valid);
  split.test.assign(first + n_train + n_valid, std::make_move_iterator(records.end()));
  return split;
}

}  // namespace igt
