#include "fineval/quantity.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fineval/log.hpp"
#include "fineval/text.hpp"

namespace fineval {

namespace {

const std::unordered_map<std::string, Unit> kUnitWords = {
    {"mm", Unit::mm},          {"millimeter", Unit::mm},  {"millimeters", Unit::mm},
    {"millimetre", Unit::mm},  {"millimetres", Unit::mm}, {"cm", Unit::cm},
    {"centimeter", Unit::cm},  {"centimeters", Unit::cm}, {"centimetre", Unit::cm},
    {"centimetres", Unit::cm}, {"m", Unit::m},            {"meter", Unit::m},
    {"meters", Unit::m},       {"metre", Unit::m},        {"metres", Unit::m},
    {"hu", Unit::hounsfield},  {"hounsfield", Unit::hounsfield},
};

const std::unordered_set<std::string> kModifierWords = {
    "about", "approximately", "approx", "around", "roughly", "circa", "unit", "units",
};

struct Token {
  enum class Kind { number, dash, word } kind;
  double value = 0.0;
  std::string word;
};

// Lexes into numbers, range dashes, and words. Returns nullopt on anything
// that cannot appear in a plain quantity.
std::optional<std::vector<Token>> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto peek_digit = [&](std::size_t at) {
    return at < text.size() && std::isdigit(static_cast<unsigned char>(text[at])) != 0;
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '~') {
      ++i;
      continue;
    }
    bool sign = (c == '+' || c == '-') && peek_digit(i + 1) &&
                (tokens.empty() || tokens.back().kind != Token::Kind::number);
    if (std::isdigit(c) || sign) {
      std::size_t start = i;
      std::string digits;
      if (sign) digits.push_back(static_cast<char>(c)), ++i;
      while (peek_digit(i)) digits.push_back(text[i++]);
      // One decimal separator, point or comma, followed by digits.
      if (i < text.size() && (text[i] == '.' || text[i] == ',') && peek_digit(i + 1)) {
        digits.push_back('.');
        ++i;
        while (peek_digit(i)) digits.push_back(text[i++]);
      }
      (void)start;
      tokens.push_back({Token::Kind::number, std::strtod(digits.c_str(), nullptr), {}});
      continue;
    }
    if (c == '-') {
      tokens.push_back({Token::Kind::dash, 0.0, {}});
      ++i;
      continue;
    }
    if (std::isalpha(c)) {
      std::string word;
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
        word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
        ++i;
      }
      tokens.push_back({Token::Kind::word, 0.0, std::move(word)});
      continue;
    }
    if (c == '.' || c == ',' || c == ';' || c == ':') {
      ++i;  // stray punctuation
      continue;
    }
    return std::nullopt;
  }
  return tokens;
}

}  // namespace

double QuantityValue::canonical() const {
  switch (unit) {
    case Unit::mm: return magnitude;
    case Unit::cm: return magnitude * 10.0;
    case Unit::m: return magnitude * 1000.0;
    case Unit::unitless:
    case Unit::hounsfield: return magnitude;
  }
  return magnitude;
}

std::optional<QuantityValue> parse_quantity(std::string_view text) {
  auto tokens = lex(text);
  if (!tokens) return std::nullopt;

  std::vector<double> numbers;
  bool range_dash = false;
  std::optional<Unit> unit;
  for (std::size_t t = 0; t < tokens->size(); ++t) {
    const Token& tok = (*tokens)[t];
    switch (tok.kind) {
      case Token::Kind::number:
        if (numbers.size() >= 2) return std::nullopt;
        numbers.push_back(tok.value);
        break;
      case Token::Kind::dash:
        // Only meaningful as a range separator: number '-' number.
        if (numbers.size() != 1 || range_dash) return std::nullopt;
        if (t + 1 >= tokens->size() || (*tokens)[t + 1].kind != Token::Kind::number)
          return std::nullopt;
        range_dash = true;
        break;
      case Token::Kind::word: {
        auto it = kUnitWords.find(tok.word);
        if (it != kUnitWords.end()) {
          if (unit) return std::nullopt;
          unit = it->second;
        } else if (kModifierWords.count(tok.word) == 0) {
          return std::nullopt;
        }
        break;
      }
    }
  }
  if (numbers.empty()) return std::nullopt;
  if (numbers.size() == 2 && !range_dash) return std::nullopt;

  QuantityValue q;
  q.raw = std::string(text);
  q.unit = unit.value_or(Unit::unitless);
  if (numbers.size() == 2) {
    q.magnitude = (numbers[0] + numbers[1]) / 2.0;
    log::info("quantity", "range \"" + trim(text) + "\" resolved to midpoint");
  } else {
    q.magnitude = numbers[0];
  }
  if (!std::isfinite(q.magnitude)) return std::nullopt;
  return q;
}

std::optional<double> numeric_compare_oracle(const std::string& gold,
                                             const std::string& predicted) {
  auto g = parse_quantity(gold);
  auto p = parse_quantity(predicted);
  if (!g || !p) return std::nullopt;

  auto is_length = [](Unit u) { return u == Unit::mm || u == Unit::cm || u == Unit::m; };

  double gv = 0.0, pv = 0.0;
  if (g->unit == Unit::unitless || p->unit == Unit::unitless) {
    // The unitless side answers in the other side's unit.
    gv = g->magnitude;
    pv = p->magnitude;
  } else if (is_length(g->unit) && is_length(p->unit)) {
    gv = g->canonical();
    pv = p->canonical();
  } else if (g->unit == p->unit) {
    gv = g->magnitude;
    pv = p->magnitude;
  } else {
    return 0.0;  // incompatible dimensions, e.g. mm vs hounsfield
  }

  if (gv == 0.0) return pv == 0.0 ? 1.0 : 0.0;
  double rel = std::fabs(pv - gv) / std::fabs(gv);
  if (rel < 0.10) return 1.0;
  if (rel < 0.30) return 0.5;
  return 0.0;
}

}  // namespace fineval
