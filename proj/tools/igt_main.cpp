// igt: command-line front end, one pipeline stage per subcommand.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "igt/igt.hpp"

namespace fs = std::filesystem;

namespace {

int verbosity = 0;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw igt::Error(igt::ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes the whole payload in one go so a failed run leaves no partial file.
void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw igt::Error(igt::ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << data;
  if (!out) throw igt::Error(igt::ErrorCode::Io, "write to '" + path + "' failed");
}

void warn(const igt::Warning& w) { std::cerr << "warning: " << w.str() << '\n'; }

void info(const std::string& msg) {
  if (verbosity > 0) std::cerr << "info: " << msg << '\n';
}

igt::NormalizationTable table_from(const std::string& spec, const std::string& order) {
  igt::NormalizationTable t = spec.empty() || spec == "default" ? igt::default_table() : igt::load_table(spec);
  if (order == "person-first") t.set_order(igt::PersonNumberOrder::PersonFirst);
  else if (order == "number-first") t.set_order(igt::PersonNumberOrder::NumberFirst);
  return t;
}

igt::LemmaDictionary dict_from(const std::string& path) {
  std::istringstream in(read_input(path));
  return igt::LemmaDictionary::read(in);
}

igt::OovPolicy oov_from(const std::string& s) {
  if (s == "mark") return igt::OovPolicy::KeepMarked;
  if (s == "drop") return igt::OovPolicy::Drop;
  return igt::OovPolicy::Keep;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<igt::Tokens> tokenized_lines(const std::string& content) {
  std::vector<igt::Tokens> out;
  for (auto l : igt::text::split_lines(igt::text::strip_bom(content))) out.push_back(igt::tokenize_sentence(l));
  return out;
}

nlohmann::json json_number(std::optional<double> v) {
  if (!v) return nullptr;
  return std::round(*v * 100.0) / 100.0;
}

const std::vector<std::string> order_choices{"person-first", "number-first"};
const std::vector<std::string> oov_choices{"keep", "mark", "drop"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"igt: interlinear-gloss pivot toolkit"};
  app.require_subcommand(1);
  app.add_flag("--verbose", verbosity, "Print progress information to standard error");

  std::string in_path, out_path, lang_code, table_spec = "default", order, id_prefix;

  // parse-odin
  auto* odin = app.add_subcommand("parse-odin", "ODIN-style IGT blocks to canonical corpus records");
  odin->add_option("--in", in_path, "Input file (default: standard input)");
  odin->add_option("--out", out_path, "Output corpus (default: standard output)");
  odin->add_option("--lang", lang_code, "Language tag (3 lowercase letters)")->required();
  odin->add_option("--table", table_spec, "Normalization table for label classification: default or FILE");
  odin->add_option("--id-prefix", id_prefix, "Record id prefix (default: odin)");

  // parse-toolbox
  std::vector<std::string> markers;
  auto* tbx = app.add_subcommand("parse-toolbox", "ToolBox backslash-coded records to canonical corpus records");
  tbx->add_option("--in", in_path, "Input file (default: standard input)");
  tbx->add_option("--out", out_path, "Output corpus (default: standard output)");
  tbx->add_option("--lang", lang_code, "Language tag (3 lowercase letters)")->required();
  tbx->add_option("--marker", markers,
                  "Marker mapping MARKER=ROLE, ROLE one of source, gloss_src, gloss_tgt, target, ignore "
                  "(repeatable; replaces the default \\t \\m \\g \\f map)");
  tbx->add_option("--table", table_spec, "Normalization table for label classification: default or FILE");
  tbx->add_option("--id-prefix", id_prefix, "Record id prefix (default: tbx)");

  // parse-analyzer
  auto* ana = app.add_subcommand("parse-analyzer", "Analyzer output (surface+Tag+...) to glosses with source lemmas");
  ana->add_option("--in", in_path, "Analyzer output, one sentence per line (default: standard input)");
  ana->add_option("--out", out_path, "Output glosses (default: standard output)");
  ana->add_option("--table", table_spec, "Normalization table: default or FILE");

  // normalize
  bool corpus_mode = false;
  auto* norm = app.add_subcommand("normalize", "Normalize morpheme labels in gloss lines");
  norm->add_option("--in", in_path, "Gloss lines, one per line (default: standard input)");
  norm->add_option("--out", out_path, "Output (default: standard output)");
  norm->add_option("--table", table_spec, "Normalization table: default or FILE");
  norm->add_option("--order", order, "Person/number order for composites like 3SG (overrides the table)")
      ->check(CLI::IsMember(order_choices));
  norm->add_flag("--corpus", corpus_mode, "Input and output are canonical corpus records");

  // split
  std::uint64_t seed = 0;
  std::string ratios_text = "0.8,0.1,0.1", out_dir;
  auto* split = app.add_subcommand("split", "Seeded train/validation/test split of a corpus");
  split->add_option("--in", in_path, "Input corpus (default: standard input)");
  split->add_option("--out-dir", out_dir, "Directory for train.txt, valid.txt, test.txt")->required();
  split->add_option("--seed", seed, "Shuffle seed (default: 0)");
  split->add_option("--ratios", ratios_text, "train,valid,test ratios summing to 1 (default: 0.8,0.1,0.1)");

  // align
  std::string src_path, tgt_path, ttable_out, ttable_in;
  std::size_t iters = 5;
  bool use_null = false;
  double threshold = 0.0;
  auto* align = app.add_subcommand("align", "Train IBM Model 1 and extract a lemma dictionary");
  align->add_option("--src", src_path, "Source side, one sentence per line")->required()->check(CLI::ExistingFile);
  align->add_option("--tgt", tgt_path, "Target side, one sentence per line")->required()->check(CLI::ExistingFile);
  align->add_option("--iters", iters, "EM iterations (default: 5)")->check(CLI::PositiveNumber);
  align->add_flag("--null", use_null, "Add a NULL target word");
  align->add_option("--threshold", threshold, "Minimum probability for a dictionary entry (default: 0)");
  align->add_option("--out", out_path, "Dictionary TSV (default: standard output)");
  align->add_option("--ttable-out", ttable_out, "Also write the full translation table");

  // dict
  auto* dict = app.add_subcommand("dict", "Extract a lemma dictionary from a saved translation table");
  dict->add_option("--ttable", ttable_in, "Translation table TSV")->required()->check(CLI::ExistingFile);
  dict->add_option("--threshold", threshold, "Minimum probability for an entry (default: 0)");
  dict->add_option("--out", out_path, "Dictionary TSV (default: standard output)");

  // subst
  std::string dict_path, oov = "keep";
  auto* subst = app.add_subcommand("subst", "Replace source lemmas in glosses by dictionary targets");
  subst->add_option("--in", in_path, "Glosses with source lemmas (default: standard input)");
  subst->add_option("--out", out_path, "Output (default: standard output)");
  subst->add_option("--dict", dict_path, "Dictionary TSV")->required()->check(CLI::ExistingFile);
  subst->add_option("--table", table_spec, "Normalization table for label classification: default or FILE");
  subst->add_option("--oov", oov, "keep, mark or drop lemmas missing from the dictionary")
      ->check(CLI::IsMember(oov_choices));

  // prepare-multi
  std::vector<std::string> corpus_in;
  std::string src_out, tgt_out;
  bool split_morphs = false;
  auto* multi = app.add_subcommand("prepare-multi", "Language-tagged gloss-to-target training pairs");
  multi->add_option("--in", corpus_in, "Input corpora (repeatable; default: standard input)");
  multi->add_option("--src-out", src_out, "Tagged gloss lines")->required();
  multi->add_option("--tgt-out", tgt_out, "Target lines")->required();
  multi->add_flag("--split-morphs", split_morphs, "Put each morph in its own token");

  // pivot
  std::string analyzer_path, translator_spec = "baseline", report_path;
  double timeout = 300.0;
  auto* pivot = app.add_subcommand("pivot", "Analyzer output -> gloss -> target-lemma gloss -> translation");
  pivot->add_option("--analyzer-out", analyzer_path, "Analyzer output file")->required()->check(CLI::ExistingFile);
  pivot->add_option("--table", table_spec, "Normalization table: default or FILE");
  pivot->add_option("--dict", dict_path, "Dictionary TSV")->required()->check(CLI::ExistingFile);
  pivot->add_option("--translator", translator_spec, "baseline, identity or cmd:\"SHELL COMMAND\" (default: baseline)");
  pivot->add_option("--timeout", timeout, "Seconds allowed for an external translator (default: 300)");
  pivot->add_flag("--split-morphs", split_morphs, "Feed the translator one morph per token");
  pivot->add_option("--oov", oov, "keep, mark or drop lemmas missing from the dictionary")
      ->check(CLI::IsMember(oov_choices));
  pivot->add_option("--report", report_path, "Write per-stage counts and the sentence audit here");
  pivot->add_option("--out", out_path, "Translations (default: standard output)");

  // eval
  std::string hyp_path, ref_path, ann_path, lexicon_path;
  bool no_aux = false, smooth = false;
  auto* eval = app.add_subcommand("eval", "BLEU and the five low-resource metrics");
  eval->add_option("--hyp", hyp_path, "Hypotheses, one sentence per line")->required()->check(CLI::ExistingFile);
  eval->add_option("--ref", ref_path, "References, one sentence per line")->required()->check(CLI::ExistingFile);
  eval->add_option("--ann", ann_path, "Annotation TSV")->check(CLI::ExistingFile);
  eval->add_option("--lexicon", lexicon_path, "Extra inflection entries")->check(CLI::ExistingFile);
  eval->add_flag("--no-aux", no_aux, "Ignore auxiliary patterns in tense matching");
  eval->add_flag("--smooth", smooth, "Add-one smoothing for BLEU orders 2-4");
  eval->add_option("--out", out_path, "Report (default: standard output)");

  // dump-table
  auto* dump = app.add_subcommand("dump-table", "Write the built-in normalization table");
  dump->add_option("--out", out_path, "Output (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    // exit status 2 for every usage error
    if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front())
      std::cerr << sub->help();
    return 2;
  }

  try {
    if (*odin) {
      const igt::LanguageTag lang(lang_code);
      const auto table = table_from(table_spec, "");
      const auto parsed = igt::parse_odin_blocks(read_input(in_path));
      for (const auto& w : parsed.warnings) warn(w);
      std::vector<igt::IgtRecord> records;
      const std::string prefix = id_prefix.empty() ? "odin" : id_prefix;
      for (const auto& block : parsed.blocks) {
        try {
          records.push_back(
              igt::block_to_record(block, lang, prefix + "-" + std::to_string(records.size() + 1), table));
        } catch (const igt::Error& e) {
          warn({e.code(), block.first_line, "block skipped: " + e.message()});
        }
      }
      std::ostringstream out;
      igt::write_corpus(out, records);
      write_output(out_path, out.str());
      info(std::to_string(records.size()) + " records");
    } else if (*tbx) {
      const igt::LanguageTag lang(lang_code);
      const auto table = table_from(table_spec, "");
      igt::ToolboxFieldMap map;
      if (markers.empty()) map = igt::default_toolbox_map();
      for (const auto& m : markers) {
        const auto eq = m.find('=');
        std::optional<igt::ToolboxRole> role;
        if (eq != std::string::npos) role = igt::parse_toolbox_role(m.substr(eq + 1));
        if (!role || eq == 0 || m[0] != '\\') {
          std::cerr << "error: bad --marker '" << m << "' (expected \\MARKER=ROLE)\n" << tbx->help();
          return 2;
        }
        map[m.substr(0, eq)] = *role;
      }
      auto parsed =
          igt::parse_toolbox(read_input(in_path), map, lang, id_prefix.empty() ? "tbx" : id_prefix, table);
      for (const auto& w : parsed.warnings) warn(w);
      std::ostringstream out;
      igt::write_corpus(out, parsed.records);
      write_output(out_path, out.str());
    } else if (*ana) {
      const auto table = table_from(table_spec, "");
      std::string out;
      std::size_t lineno = 0;
      igt::NormalizationStats stats;
      const auto input = read_input(in_path);
      for (auto line : igt::text::split_lines(igt::text::strip_bom(input))) {
        ++lineno;
        if (!igt::text::trim(line).empty()) {
          std::vector<igt::AnalyzerToken> toks;
          try {
            toks = igt::parse_analyzer_line(line);
          } catch (const igt::Error& e) {
            throw igt::Error(e.code(), "line " + std::to_string(lineno) + ": " + e.message());
          }
          igt::NormalizationStats s;
          out += igt::analyzer_to_gloss(toks, table, &s).render();
          for (const auto& u : s.unknown)
            warn({igt::ErrorCode::UnknownAnalyzerTag, lineno, "tag '" + u + "' passed through"});
          stats.merge(s);
        }
        out += '\n';
      }
      write_output(out_path, out);
    } else if (*norm) {
      const auto table = table_from(table_spec, order);
      const auto input = read_input(in_path);
      igt::NormalizationStats stats;
      std::string out;
      if (corpus_mode) {
        std::istringstream in(input);
        auto records = igt::read_corpus(in, table);
        for (auto& r : records) {
          if (r.gloss_src) r.gloss_src = igt::normalize_gloss_line(*r.gloss_src, table, &stats);
          if (r.gloss_tgt) r.gloss_tgt = igt::normalize_gloss_line(*r.gloss_tgt, table, &stats);
        }
        std::ostringstream os;
        igt::write_corpus(os, records);
        out = os.str();
      } else {
        for (auto line : igt::text::split_lines(igt::text::strip_bom(input))) {
          if (!igt::text::trim(line).empty())
            out += igt::normalize_gloss_line(igt::tokenize_gloss(line, table), table, &stats).render();
          out += '\n';
        }
      }
      for (const auto& u : stats.unknown) warn({igt::ErrorCode::UnknownLabel, 0, "label '" + u + "' kept as is"});
      write_output(out_path, out);
      info(std::to_string(stats.labels_seen) + " labels, " + std::to_string(stats.unknown_labels) + " unknown");
    } else if (*split) {
      const auto parts = igt::text::split(ratios_text, ',');
      if (parts.size() != 3) {
        std::cerr << "error: --ratios needs three comma-separated numbers\n" << split->help();
        return 2;
      }
      igt::SplitRatios ratios;
      try {
        ratios = {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
      } catch (const std::exception&) {
        std::cerr << "error: --ratios needs three comma-separated numbers\n" << split->help();
        return 2;
      }
      std::istringstream in(read_input(in_path));
      const auto result = igt::split_corpus(igt::read_corpus(in), ratios, seed);
      const std::pair<const char*, const std::vector<igt::IgtRecord>*> files[] = {
          {"train.txt", &result.train}, {"valid.txt", &result.validation}, {"test.txt", &result.test}};
      for (const auto& [name, recs] : files) {
        std::ostringstream os;
        igt::write_corpus(os, *recs);
        write_output((fs::path(out_dir) / name).string(), os.str());
      }
      info(std::to_string(result.train.size()) + "/" + std::to_string(result.validation.size()) + "/" +
           std::to_string(result.test.size()));
    } else if (*align) {
      const auto corpus = igt::ParallelCorpus::from_lines(read_input(src_path), read_input(tgt_path));
      const auto ttable = igt::train_model1(corpus, iters, use_null);
      const auto& log = ttable.perplexity_log();
      for (std::size_t k = 0; k < log.size(); ++k) info("iteration " + std::to_string(k) + " perplexity " + fmt17(log[k]));
      if (!ttable_out.empty()) {
        std::ostringstream os;
        ttable.write(os);
        write_output(ttable_out, os.str());
      }
      std::ostringstream os;
      igt::extract_dictionary(ttable, threshold).write(os);
      write_output(out_path, os.str());
    } else if (*dict) {
      std::istringstream in(read_input(ttable_in));
      const auto ttable = igt::TranslationTable::read(in);
      std::ostringstream os;
      igt::extract_dictionary(ttable, threshold).write(os);
      write_output(out_path, os.str());
    } else if (*subst) {
      const auto table = table_from(table_spec, "");
      const auto d = dict_from(dict_path);
      std::string out;
      std::size_t lineno = 0;
      const auto input = read_input(in_path);
      for (auto line : igt::text::split_lines(igt::text::strip_bom(input))) {
        ++lineno;
        if (!igt::text::trim(line).empty()) {
          igt::SubstitutionStats s;
          out += igt::substitute_lemmas(igt::tokenize_gloss(line, table), d, oov_from(oov), &s).render();
          for (const auto& l : s.oov_lemmas) warn({igt::ErrorCode::OovLemma, lineno, "OOV lemma '" + l + "'"});
        }
        out += '\n';
      }
      write_output(out_path, out);
    } else if (*multi) {
      std::vector<igt::IgtRecord> records;
      if (corpus_in.empty()) corpus_in.push_back("-");
      for (const auto& p : corpus_in) {
        std::istringstream in(read_input(p));
        auto r = igt::read_corpus(in);
        records.insert(records.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      }
      const auto pairs = igt::prepare_multilingual(records, split_morphs);
      for (const auto& w : pairs.warnings) warn(w);
      std::string s, t;
      for (const auto& [a, b] : pairs.pairs) {
        s += a + '\n';
        t += b + '\n';
      }
      write_output(src_out, s);
      write_output(tgt_out, t);
    } else if (*pivot) {
      const auto table = table_from(table_spec, "");
      const auto d = dict_from(dict_path);
      const auto translator = igt::TranslatorHandle::parse(translator_spec, timeout);
      igt::PipelineOptions opts;
      opts.oov = oov_from(oov);
      opts.split_morphs = split_morphs;
      const auto result = igt::run_pipeline(read_input(analyzer_path), table, d, translator, opts);
      const auto& rep = result.report;
      std::string out;
      for (const auto& t : result.translations) out += t + '\n';
      write_output(out_path, out);
      if (!report_path.empty()) {
        std::ostringstream os;
        os << "sentences=" << rep.sentences << '\n'
           << "analyzer_tokens=" << rep.analyzer_tokens << '\n'
           << "gloss_src_tokens=" << rep.gloss_src_tokens << '\n'
           << "gloss_tgt_tokens=" << rep.gloss_tgt_tokens << '\n'
           << "tokens_conserved=" << (rep.tokens_conserved() ? "true" : "false") << '\n'
           << "lemmas=" << rep.lemmas << '\n'
           << "oov=" << rep.oov_lemmas << '\n'
           << "unknown_labels=" << rep.unknown_labels << '\n'
           << "unknown_analyzer_tags=" << rep.unknown_analyzer_tags << '\n';
        for (std::size_t i = 0; i < rep.audit.size(); ++i) {
          const auto& a = rep.audit[i];
          const auto k = "sentence." + std::to_string(i + 1) + ".";
          os << k << "analyzer=" << a.analyzer << '\n'
             << k << "gloss_src=" << a.gloss_src << '\n'
             << k << "gloss_tgt=" << a.gloss_tgt << '\n'
             << k << "translator_input=" << a.translator_input << '\n'
             << k << "translation=" << a.translation << '\n';
        }
        write_output(report_path, os.str());
      }
      for (const auto& l : rep.oov) warn({igt::ErrorCode::OovLemma, 0, "OOV lemma '" + l + "'"});
      for (const auto& u : rep.unknown) warn({igt::ErrorCode::UnknownAnalyzerTag, 0, "tag '" + u + "' passed through"});
      if (!rep.tokens_conserved())
        std::cerr << "warning: token counts differ across stages (" << rep.analyzer_tokens << "/"
                  << rep.gloss_src_tokens << "/" << rep.gloss_tgt_tokens << ")\n";
    } else if (*eval) {
      const auto hyps = tokenized_lines(read_input(hyp_path));
      const auto refs = tokenized_lines(read_input(ref_path));
      const auto anns = ann_path.empty() ? std::map<std::size_t, igt::EvalAnnotation>{}
                                         : igt::parse_annotations(read_input(ann_path));
      const auto lex = lexicon_path.empty() ? igt::InflectionLexicon::builtin() : igt::InflectionLexicon::load(lexicon_path);
      igt::EvalOptions opts;
      opts.auxiliaries = !no_aux;
      opts.smoothing = smooth;
      const auto r = igt::evaluate(hyps, refs, anns, lex, opts);
      nlohmann::ordered_json j;
      j["Noun-match accuracy"] = json_number(r.noun_match);
      j["Verb-match accuracy"] = json_number(r.verb_match);
      j["Subject-verb agreement accuracy"] = json_number(r.subj_verb_agreement);
      j["Tense-match accuracy"] = json_number(r.tense_match);
      j["Non-repetition metric"] = json_number(r.non_repetition);
      j["4-gram BLEU"] = json_number(r.bleu4);
      j["1-gram BLEU"] = json_number(r.bleu1);
      j["sentences"] = r.n_sentences;
      write_output(out_path, igt::format_report(r) + "summary=" + j.dump() + '\n');
    } else if (*dump) {
      write_output(out_path, std::string(igt::default_table_text));
    }
  } catch (const igt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: IO_ERROR: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
