#include "recast/baselines.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "recast/error.hpp"
#include "recast/text.hpp"

namespace recast {

SenseTable wsd_train(const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (pairs.empty()) throw EmptyCorpusError("empty WSD training corpus");
  std::map<std::string, std::map<std::string, size_t>> counts;
  std::map<std::string, size_t> sense_totals;
  for (const auto& [token, sense] : pairs) {
    ++counts[token][sense];
    ++sense_totals[sense];
  }
  SenseTable table;
  for (const auto& [token, by_sense] : counts) {
    std::vector<std::pair<std::string, size_t>> list(by_sense.begin(), by_sense.end());
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    table.senses.emplace(token, std::move(list));
  }
  size_t best = 0;
  for (const auto& [sense, c] : sense_totals) {
    if (c > best || (c == best && (table.global_most_frequent.empty() ||
                                   sense < table.global_most_frequent))) {
      best = c;
      table.global_most_frequent = sense;
    }
  }
  return table;
}

std::optional<std::string> wsd_predict(const SenseTable& table, const std::string& token,
                                       WsdFallback fallback) {
  auto it = table.senses.find(token);
  if (it != table.senses.end()) return it->second.front().first;
  if (fallback == WsdFallback::Global) return table.global_most_frequent;
  return std::nullopt;
}

WsdScore wsd_evaluate(const SenseTable& table,
                      const std::vector<std::pair<std::string, std::string>>& test,
                      WsdFallback fallback) {
  if (test.empty()) throw EmptyCorpusError("empty WSD test corpus");
  WsdScore score;
  score.total = test.size();
  for (const auto& [token, gold] : test) {
    auto predicted = wsd_predict(table, token, fallback);
    if (!predicted) continue;
    ++score.attempted;
    if (*predicted == gold) ++score.correct;
  }
  score.coverage = static_cast<double>(score.attempted) / static_cast<double>(score.total);
  if (score.attempted > 0) {
    score.accuracy = static_cast<double>(score.correct) / static_cast<double>(score.attempted);
  }
  return score;
}

std::vector<std::pair<std::string, std::string>> load_wsd_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open WSD corpus: " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(path + " line " + std::to_string(lineno) + ": expected token<TAB>sense");
    }
    pairs.emplace_back(trim(line.substr(0, tab)), trim(line.substr(tab + 1)));
  }
  return pairs;
}

namespace {

bool is_ref_keyword(const std::string& word, const NormalizeConfig& config) {
  for (const auto& kw : config.ref_keywords) {
    if (word.size() != kw.size()) continue;
    bool eq = true;
    for (size_t i = 0; i < kw.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(word[i])) !=
          std::tolower(static_cast<unsigned char>(kw[i]))) {
        eq = false;
        break;
      }
    }
    if (eq) return true;
  }
  return false;
}

bool is_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string normalize_sentence(const std::string& sentence, const NormalizeConfig& config,
                               size_t* unterminated_warnings) {
  // Pass 1: replace math spans with <M> placeholders.
  std::string pass1;
  size_t i = 0;
  const size_t n = sentence.size();
  while (i < n) {
    bool matched = false;
    for (const auto& [open, close] : config.math_delims) {
      if (sentence.compare(i, open.size(), open) == 0) {
        size_t end = sentence.find(close, i + open.size());
        if (end == std::string::npos) {
          if (unterminated_warnings) ++*unterminated_warnings;
          i = n;  // span runs to the end of the sentence
        } else {
          i = end + close.size();
        }
        pass1 += " <M> ";
        matched = true;
        break;
      }
    }
    if (!matched) {
      pass1 += sentence[i];
      ++i;
    }
  }

  // Pass 2: tokenize with punctuation split off; placeholders survive.
  std::vector<std::string> words;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      words.push_back(cur);
      cur.clear();
    }
  };
  for (size_t p = 0; p < pass1.size(); ++p) {
    char c = pass1[p];
    if (pass1.compare(p, 3, "<M>") == 0 || pass1.compare(p, 3, "<R>") == 0) {
      flush();
      words.push_back(pass1.substr(p, 3));
      p += 2;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (is_punct(c)) {
      flush();
      words.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  flush();

  // Pass 3: reference phrases, then lowercase everything but placeholders.
  std::vector<std::string> out;
  for (size_t w = 0; w < words.size(); ++w) {
    if (is_ref_keyword(words[w], config) && w + 1 < words.size() &&
        words[w + 1] != "<M>" && words[w + 1] != "<R>" && !is_punct(words[w + 1][0])) {
      out.push_back("<R>");
      ++w;
      continue;
    }
    if (words[w] == "<M>" || words[w] == "<R>") {
      out.push_back(words[w]);
      continue;
    }
    std::string lowered = words[w];
    for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(lowered));
  }
  return join(out, " ");
}

PatternStats pattern_stats(const std::vector<std::string>& sentences,
                           const NormalizeConfig& config) {
  PatternStats stats;
  stats.total_sentences = sentences.size();
  std::map<std::string, size_t> counts;
  for (const auto& s : sentences) ++counts[normalize_sentence(s, config)];
  stats.patterns.assign(counts.begin(), counts.end());
  std::sort(stats.patterns.begin(), stats.patterns.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  size_t running = 0;
  for (const auto& [pattern, count] : stats.patterns) {
    running += count;
    stats.coverage.push_back(static_cast<double>(running) /
                             static_cast<double>(stats.total_sentences));
  }
  return stats;
}

std::string pattern_stats_tsv(const PatternStats& stats) {
  std::string out;
  for (const auto& [pattern, count] : stats.patterns) {
    out += std::to_string(count);
    out += '\t';
    out += pattern;
    out += '\n';
  }
  return out;
}

std::string pattern_stats_json(const PatternStats& stats) {
  std::string out = "{\"coverage\":[";
  for (size_t i = 0; i < stats.coverage.size(); ++i) {
    if (i) out += ',';
    out += format_fixed6(stats.coverage[i]);
  }
  out += "],\"patterns\":[";
  for (size_t i = 0; i < stats.patterns.size(); ++i) {
    if (i) out += ',';
    out += "{\"count\":";
    out += std::to_string(stats.patterns[i].second);
    out += ",\"pattern\":\"";
    for (char c : stats.patterns[i].first) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += "\"}";
  }
  out += "],\"total_sentences\":";
  out += std::to_string(stats.total_sentences);
  out += "}\n";
  return out;
}

}  // namespace recast
