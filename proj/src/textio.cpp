#include "rrw/textio.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace rrw {

std::string SourceSpan::str() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

SyntaxError::SyntaxError(const std::string& message, SourceSpan span)
    : Error(span.str() + ": " + message), span_(span) {}

ValidationError::ValidationError(const std::string& message, SourceSpan span,
                                 ValidationReport report)
    : Error(span.str() + ": " + message), span_(span), report_(std::move(report)) {}

namespace {

enum class Tok { ident, arrow, gt, colon, lbrace, rbrace, newline, punct, end };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c == '^' || c == '$' || c == '-' ||
         c >= 0x80;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, line_start = 0, i = 0;
  auto span = [&](std::size_t at, std::size_t len) {
    return SourceSpan{line, at - line_start + 1, at, len};
  };
  while (i < src.size()) {
    const unsigned char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == '\n') {
      out.push_back({Tok::newline, "\n", span(i, 1)});
      ++i;
      ++line;
      line_start = i;
    } else if (std::isspace(c)) {
      ++i;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", span(i, 2)});
      i += 2;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j]) &&
             !(src[j] == '-' && j + 1 < src.size() && src[j + 1] == '>'))
        ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), span(i, j - i)});
      i = j;
    } else {
      Tok k = Tok::punct;
      if (c == '>') k = Tok::gt;
      if (c == ':') k = Tok::colon;
      if (c == '{') k = Tok::lbrace;
      if (c == '}') k = Tok::rbrace;
      out.push_back({k, std::string(1, static_cast<char>(c)), span(i, 1)});
      ++i;
    }
  }
  out.push_back({Tok::end, "", span(i, 0)});
  return out;
}

bool is_attribute(const std::string& s) {
  return s == "forbid" || s == "permit" || s == "success" || s == "failure";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  System run() {
    skip_newlines();
    expect_word("system");
    const Token& kind_tok = expect(Tok::ident, "system kind");
    auto kind = parse_kind(kind_tok.text);
    if (!kind) throw SyntaxError("unknown system kind '" + kind_tok.text + "'", kind_tok.span);
    sys_.kind = *kind;
    sys_.name = expect(Tok::ident, "system name").text;
    end_of_line();

    std::vector<std::pair<std::vector<Token>, SourceSpan>> priorities;
    while (true) {
      skip_newlines();
      if (peek().kind == Tok::end) break;
      const Token& key = expect(Tok::ident, "declaration");
      if (key.text == "component") {
        parse_component();
        continue;
      }
      if (key.text == "non-erasing") {
        sys_.non_erasing = true;
        end_of_line();
        continue;
      }
      expect(Tok::colon, "':'");
      if (key.text == "nonterminals") {
        sys_.nonterminals = ident_list();
      } else if (key.text == "terminals") {
        sys_.terminals = ident_list();
      } else if (key.text == "start") {
        sys_.start = note(expect(Tok::ident, "start symbol")).text;
      } else if (key.text == "init-labels") {
        sys_.init_labels = ident_list();
      } else if (key.text == "final-labels") {
        sys_.final_labels = ident_list();
      } else if (key.text == "mode") {
        std::string text;
        const SourceSpan at = peek().span;
        while (peek().kind != Tok::newline && peek().kind != Tok::end) text += next().text;
        try {
          sys_.default_mode = Mode::parse(text);
        } catch (const Error& e) {
          throw SyntaxError(e.what(), at);
        }
      } else if (key.text == "priority") {
        std::vector<Token> chain{expect(Tok::ident, "component name")};
        while (peek().kind == Tok::gt) {
          next();
          chain.push_back(expect(Tok::ident, "component name"));
        }
        if (chain.size() < 2) throw SyntaxError("priority needs at least two components", key.span);
        priorities.push_back({chain, key.span});
      } else {
        throw SyntaxError("unknown declaration '" + key.text + "'", key.span);
      }
      end_of_line();
    }

    if (!priorities.empty()) {
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& [chain, at] : priorities) {
        std::vector<std::size_t> idx;
        for (const Token& t : chain) {
          auto i = sys_.component_index(t.text);
          if (!i) throw SyntaxError("unknown component '" + t.text + "'", t.span);
          idx.push_back(*i);
        }
        for (std::size_t j = 0; j + 1 < idx.size(); ++j) pairs.insert({idx[j], idx[j + 1]});
      }
      sys_.priority = close_checked(sys_.components.size(), pairs, priorities.front().second);
    }

    if (sys_.kind == SystemKind::gc) {
      if (sys_.components.size() != 1)
        throw SyntaxError("gc systems need exactly one component block", toks_.front().span);
      for (auto& r : sys_.components.front().rules) {
        GcRule g;
        g.core = std::move(r);
        auto it = fields_.find(g.core.label);
        if (it != fields_.end()) {
          g.success = it->second.first;
          g.failure = it->second.second;
        }
        sys_.gc_rules.push_back(std::move(g));
      }
      sys_.components.clear();
    }

    const ValidationReport report = validate(sys_);
    if (!report.ok()) {
      const Violation& v = report.violations.front();
      throw ValidationError(v.code + ": " + v.message + locate_names(report), span_for(v.message),
                            report);
    }
    return std::move(sys_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      const std::string got = peek().kind == Tok::end       ? "end of input"
                              : peek().kind == Tok::newline ? "end of line"
                                                            : "'" + peek().text + "'";
      throw SyntaxError("expected " + what + ", found " + got, peek().span);
    }
    return next();
  }
  void expect_word(const std::string& w) {
    if (peek().kind != Tok::ident || peek().text != w)
      throw SyntaxError("expected '" + w + "'", peek().span);
    next();
  }
  void skip_newlines() {
    while (peek().kind == Tok::newline) next();
  }
  void end_of_line() {
    if (peek().kind != Tok::newline && peek().kind != Tok::end)
      throw SyntaxError("unexpected '" + peek().text + "'", peek().span);
  }
  const Token& note(const Token& t) {
    first_seen_.emplace(t.text, t.span);
    return t;
  }
  std::vector<std::string> ident_list() {
    std::vector<std::string> out;
    while (peek().kind == Tok::ident) out.push_back(note(next()).text);
    return out;
  }
  SymbolSet braced_set() {
    expect(Tok::lbrace, "'{'");
    SymbolSet out;
    while (true) {
      skip_newlines();
      if (peek().kind == Tok::rbrace) break;
      out.insert(note(expect(Tok::ident, "symbol")).text);
    }
    next();
    return out;
  }
  std::vector<std::string> braced_list() {
    expect(Tok::lbrace, "'{'");
    std::vector<std::string> out;
    while (true) {
      skip_newlines();
      if (peek().kind == Tok::rbrace) break;
      out.push_back(expect(Tok::ident, "label").text);
    }
    next();
    return out;
  }

  StrictOrder close_checked(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& p,
                            SourceSpan at) {
    try {
      return StrictOrder::close(n, p);
    } catch (const CycleError& e) {
      ValidationReport r;
      r.violations.push_back({"order-cycle", e.what()});
      throw ValidationError(std::string("order-cycle: ") + e.what(), at, r);
    }
  }

  void parse_component() {
    Component comp;
    comp.name = expect(Tok::ident, "component name").text;
    if (peek().kind == Tok::ident && peek().text == "entry") {
      next();
      RcCondition entry;
      while (peek().kind == Tok::ident && (peek().text == "forbid" || peek().text == "permit")) {
        const bool forbid = next().text == "forbid";
        (forbid ? entry.forbid : entry.permit) = braced_set();
      }
      comp.entry = entry;
    }
    expect(Tok::lbrace, "'{'");
    std::map<std::string, std::size_t> labels;
    std::vector<std::pair<std::vector<Token>, SourceSpan>> orders;
    std::size_t auto_label = 0;
    while (true) {
      skip_newlines();
      if (peek().kind == Tok::rbrace) break;
      if (peek().kind == Tok::ident && peek().text == "order" && peek(1).kind == Tok::colon) {
        const SourceSpan at = next().span;
        next();
        std::vector<Token> chain{expect(Tok::ident, "rule label")};
        while (peek().kind == Tok::gt) {
          next();
          chain.push_back(expect(Tok::ident, "rule label"));
        }
        if (chain.size() < 2) throw SyntaxError("order needs at least two labels", at);
        orders.push_back({chain, at});
        continue;
      }
      Rule r;
      ++auto_label;
      if (peek().kind == Tok::ident && peek(1).kind == Tok::colon) {
        r.label = next().text;
        next();
      } else {
        r.label = "r" + std::to_string(auto_label);
      }
      r.lhs = note(expect(Tok::ident, "left-hand side")).text;
      expect(Tok::arrow, "'->'");
      bool eps = false;
      while (peek().kind == Tok::ident &&
             !(is_attribute(peek().text) && peek(1).kind == Tok::lbrace)) {
        const Token& t = next();
        if (t.text == "eps") {
          eps = true;
          continue;
        }
        r.rhs.push_back(note(t).text);
      }
      if (eps && !r.rhs.empty())
        throw SyntaxError("'eps' cannot be mixed with symbols", peek().span);
      if (!eps && r.rhs.empty()) throw SyntaxError("empty right-hand side; write eps", peek().span);
      std::vector<std::string> success, failure;
      while (peek().kind == Tok::ident && is_attribute(peek().text)) {
        const std::string attr = next().text;
        if (attr == "forbid") r.forbid = braced_set();
        if (attr == "permit") r.permit = braced_set();
        if (attr == "success") success = braced_list();
        if (attr == "failure") failure = braced_list();
      }
      if (!success.empty() || !failure.empty()) fields_[r.label] = {success, failure};
      if (!labels.emplace(r.label, comp.rules.size()).second)
        throw SyntaxError("label '" + r.label + "' used twice", peek().span);
      comp.rules.push_back(std::move(r));
      if (peek().kind != Tok::rbrace) expect(Tok::newline, "end of rule");
    }
    next();
    if (!orders.empty()) {
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& [chain, at] : orders)
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
          auto g = labels.find(chain[j].text), l = labels.find(chain[j + 1].text);
          if (g == labels.end()) throw SyntaxError("unknown label '" + chain[j].text + "'", chain[j].span);
          if (l == labels.end())
            throw SyntaxError("unknown label '" + chain[j + 1].text + "'", chain[j + 1].span);
          pairs.insert({g->second, l->second});
        }
      comp.order = close_checked(comp.rules.size(), pairs, orders.front().second);
    }
    sys_.components.push_back(std::move(comp));
  }

  // Span of the first quoted name in a violation message, if the name was seen.
  SourceSpan span_for(const std::string& message) const {
    const auto a = message.find('\'');
    if (a != std::string::npos) {
      const auto b = message.find('\'', a + 1);
      if (b != std::string::npos) {
        auto it = first_seen_.find(message.substr(a + 1, b - a - 1));
        if (it != first_seen_.end()) return it->second;
      }
    }
    return toks_.front().span;
  }

  std::string locate_names(const ValidationReport& report) const {
    std::string out;
    for (std::size_t i = 1; i < report.violations.size(); ++i)
      out += "; " + report.violations[i].code + ": " + report.violations[i].message;
    return out;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  System sys_;
  std::map<std::string, SourceSpan> first_seen_;
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> fields_;
};

void write_set(std::ostream& out, const char* key, const SymbolSet& s) {
  out << ' ' << key << " {";
  for (const auto& x : s) out << ' ' << x;
  out << " }";
}

void write_list(std::ostream& out, const char* key, const std::vector<std::string>& s) {
  out << ' ' << key << " {";
  for (const auto& x : s) out << ' ' << x;
  out << " }";
}

void write_rule(std::ostream& out, const Rule& r) {
  out << "  " << r.label << ": " << r.lhs << " ->";
  if (r.rhs.empty()) out << " eps";
  for (const auto& x : r.rhs) out << ' ' << x;
  if (!r.forbid.empty()) write_set(out, "forbid", r.forbid);
  if (!r.permit.empty()) write_set(out, "permit", r.permit);
}

void write_names(std::ostream& out, const char* key, const std::vector<std::string>& names) {
  out << key << ':';
  for (const auto& n : names) out << ' ' << n;
  out << '\n';
}

}  // namespace

System parse_system(std::string_view text) { return Parser(text).run(); }

System load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string serialize_system(const System& s) {
  std::ostringstream out;
  out << "system " << kind_name(s.kind) << ' ' << s.name << '\n';
  write_names(out, "nonterminals", s.nonterminals);
  write_names(out, "terminals", s.terminals);
  out << "start: " << s.start << '\n';
  if (s.default_mode) out << "mode: " << s.default_mode->str() << '\n';
  if (s.non_erasing) out << "non-erasing\n";
  if (s.kind == SystemKind::gc) {
    write_names(out, "init-labels", s.init_labels);
    write_names(out, "final-labels", s.final_labels);
    out << "component rules {\n";
    for (const auto& g : s.gc_rules) {
      write_rule(out, g.core);
      if (!g.success.empty() || !g.failure.empty()) {
        write_list(out, "success", g.success);
        write_list(out, "failure", g.failure);
      }
      out << '\n';
    }
    out << "}\n";
    return out.str();
  }
  for (auto [g, l] : s.priority.pairs())
    out << "priority: " << s.components[g].name << " > " << s.components[l].name << '\n';
  for (const auto& c : s.components) {
    out << "component " << c.name;
    if (c.entry) {
      out << " entry";
      write_set(out, "forbid", c.entry->forbid);
      if (!c.entry->permit.empty()) write_set(out, "permit", c.entry->permit);
    }
    out << " {\n";
    for (const auto& r : c.rules) {
      write_rule(out, r);
      out << '\n';
    }
    for (auto [g, l] : c.order.pairs())
      out << "  order: " << c.rules[g].label << " > " << c.rules[l].label << '\n';
    out << "}\n";
  }
  return out.str();
}

}  // namespace rrw
