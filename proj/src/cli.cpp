#include "rrw/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>

#include "rrw/constructions.hpp"
#include "rrw/engine.hpp"
#include "rrw/equivalence.hpp"
#include "rrw/textio.hpp"

namespace rrw::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

/// Search ran out of budget or workspace; reported with exit code 3.
class Incomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string paint(const std::string& text, const char* code, bool color) {
  return color ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
}

System load(const std::string& path) {
  try {
    return load_system(path);
  } catch (const SyntaxError& e) {
    throw Error(path + ":" + e.what());
  } catch (const ValidationError& e) {
    throw Error(path + ":" + e.what());
  }
}

Mode resolve_mode(const std::optional<std::string>& text, const System& s) {
  if (text) return Mode::parse(*text);
  if (s.default_mode) return *s.default_mode;
  if (s.kind == SystemKind::gc) return Mode::t();
  throw ModeError("no --mode given and the system declares no mode");
}

StepBounds bounds_of(const RunConfig& c, std::size_t workspace) {
  if (c.step_budget == 0 || c.form_budget == 0) throw Error("budgets must be positive");
  StepBounds b;
  b.workspace = workspace;
  b.step_budget = c.step_budget;
  b.form_budget = c.form_budget;
  return b;
}

StepBounds bounds_of(const RunConfig& c) {
  if (c.max_len > c.effective_workspace())
    throw Error("--max-len " + std::to_string(c.max_len) + " exceeds the workspace " +
                std::to_string(c.effective_workspace()));
  return bounds_of(c, c.effective_workspace());
}

Json words_json(const std::vector<Word>& words) {
  Json a = Json::array();
  for (const auto& w : words) a.push_back(render_word(w));
  return a;
}

Json params_json(const RunConfig& c) {
  Json p;
  p["inputs"] = c.inputs;
  if (c.mode) p["mode"] = *c.mode;
  if (c.mode_b) p["mode_b"] = *c.mode_b;
  p["max_len"] = c.max_len;
  p["workspace"] = c.effective_workspace();
  p["step_budget"] = c.step_budget;
  p["form_budget"] = c.form_budget;
  if (!c.construction.empty()) p["construction"] = c.construction;
  if (c.k) p["k"] = *c.k;
  if (c.compact_erasing) p["compact_erasing"] = true;
  if (c.normalized) p["normalized"] = true;
  if (!c.word.empty()) p["word"] = c.word;
  if (c.reference) p["reference"] = true;
  return p;
}

Json report_json(const ConstructionReport& r) {
  Json j;
  j["construction"] = r.construction;
  j["input_kind"] = std::string(kind_name(r.input_kind));
  j["output_kind"] = std::string(kind_name(r.output_kind));
  j["input_mode"] = r.input_mode;
  j["output_mode"] = r.output_mode;
  j["fresh_nonterminals"] = r.fresh_nonterminals;
  j["components"] = r.components;
  j["rules"] = r.rules;
  j["output_erasing"] = r.output_erasing;
  j["notes"] = r.notes;
  return j;
}

std::size_t rule_count(const System& s) { return s.all_rules().size(); }

struct Output {
  Json json;
  std::string text;
  int code = kOk;
};

Output cmd_parse(const RunConfig& c) {
  const System s = load(c.inputs.at(0));
  Output o;
  o.text = serialize_system(s);
  Json r;
  r["kind"] = std::string(kind_name(s.kind));
  r["name"] = s.name;
  r["nonterminals"] = s.nonterminals.size();
  r["terminals"] = s.terminals.size();
  r["components"] = s.kind == SystemKind::gc ? s.gc_rules.size() : s.components.size();
  r["rules"] = rule_count(s);
  r["non_erasing"] = s.non_erasing;
  r["system"] = o.text;
  o.json["report"] = r;
  o.json["complete"] = true;
  return o;
}

Output cmd_enum(const RunConfig& c) {
  const System s = load(c.inputs.at(0));
  const Mode mode = resolve_mode(c.mode, s);
  const StepBounds b = bounds_of(c);
  const BoundedLanguage lang = c.reference ? reference_enumerate(s, mode, c.max_len, b)
                                           : Engine(s).enumerate_language(mode, c.max_len, b);
  Output o;
  for (const auto& w : lang.words) o.text += render_word(w) + '\n';
  o.text += "# " + std::to_string(lang.words.size()) + " words up to length " +
            std::to_string(c.max_len) + " in mode " + mode.str() + ", " +
            (lang.complete ? "complete" : "INCOMPLETE") + '\n';
  o.json["words"] = words_json(lang.words);
  o.json["complete"] = lang.complete;
  o.json["truncated"] = lang.truncated;
  o.json["budget_exceeded"] = lang.budget_exceeded;
  o.code = lang.complete ? kOk : kIncomplete;
  return o;
}

Output cmd_derive(const RunConfig& c) {
  const System s = load(c.inputs.at(0));
  const Mode mode = resolve_mode(c.mode, s);
  const Engine engine(s);
  const Form target = engine.parse_form(c.word == "eps" ? "" : c.word);
  if (!engine.is_terminal_form(target)) throw Error("--word must consist of terminals");
  const Word word = engine.to_word(target);
  const StepBounds b = bounds_of(c, c.workspace.value_or(2 * word.size() + 4));
  Output o;
  const auto trace = engine.find_derivation(mode, word, b);
  Json verdict;
  verdict["word"] = render_word(word);
  verdict["derivable"] = trace.has_value();
  if (trace) {
    o.text = "derivable: " + render_word(word) + '\n';
    const bool replayed = engine.replay(*trace, mode);
    verdict["replayed"] = replayed;
    if (c.trace) {
      Json steps = Json::array();
      o.text += "  " + engine.render(trace->start) +
                (trace->start_label.empty() ? "" : "  [" + trace->start_label + "]") + '\n';
      for (const auto& st : trace->steps) {
        Json js;
        js["component"] = st.component;
        Json apps = Json::array();
        for (const auto& a : st.applications) apps.push_back({a.rule, a.position});
        js["applications"] = apps;
        js["form"] = engine.render(st.form);
        if (!st.next_label.empty()) js["next_label"] = st.next_label;
        steps.push_back(js);
        o.text += "  => " + st.component + " (" + std::to_string(st.applications.size()) +
                  " rule applications)  " + engine.render(st.form) +
                  (st.next_label.empty() ? "" : "  [" + st.next_label + "]") + '\n';
      }
      verdict["trace"] = steps;
    }
    o.text += std::string("replay: ") + (replayed ? "ok" : "FAILED") + '\n';
    o.json["verdict"] = verdict;
    o.json["complete"] = true;
    return o;
  }
  // Not found: decide whether the search was exhaustive.
  const BoundedLanguage lang = engine.enumerate_language(mode, word.size(), b);
  o.json["verdict"] = verdict;
  o.json["complete"] = lang.complete;
  if (lang.complete) {
    o.text = "not derivable: " + render_word(word) + '\n';
    o.code = kNegative;
  } else {
    o.text = "unknown: the search for " + render_word(word) + " was cut short\n";
    o.code = kIncomplete;
  }
  return o;
}

Output cmd_transform(const RunConfig& c) {
  const System s = load(c.inputs.at(0));
  ConstructionOptions opt;
  if (c.mode) opt.mode = Mode::parse(*c.mode);
  opt.k = c.k;
  opt.compact_erasing = c.compact_erasing;
  opt.normalized = c.normalized;
  const ConstructionResult r = run_construction(c.construction, s, opt);
  const std::string text = serialize_system(r.system);
  Output o;
  if (!c.output.empty()) {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw Error("cannot write '" + c.output + "'");
    f << text;
    o.text = r.report.str();
  } else {
    std::string report = r.report.str();
    std::string commented;
    std::size_t start = 0;
    while (start < report.size()) {
      const std::size_t end = report.find('\n', start);
      commented += "# " + report.substr(start, end - start) + '\n';
      start = end + 1;
    }
    o.text = commented + text;
  }
  o.json["report"] = report_json(r.report);
  o.json["report"]["system"] = text;
  o.json["complete"] = true;
  return o;
}

Output cmd_equiv(const RunConfig& c, bool color) {
  const System a = load(c.inputs.at(0));
  const System b = load(c.inputs.at(1));
  const Mode ma = resolve_mode(c.mode, a);
  const Mode mb = resolve_mode(c.mode_b ? c.mode_b : c.mode, b);
  const EquivVerdict v = bounded_equiv(a, ma, b, mb, c.max_len, bounds_of(c));
  Output o;
  Json j;
  j["equal"] = v.equal;
  j["only_in_a"] = words_json(v.only_in_a);
  j["only_in_b"] = words_json(v.only_in_b);
  j["complete_a"] = v.complete_a;
  j["complete_b"] = v.complete_b;
  o.json["verdict"] = j;
  o.json["complete"] = v.complete_a && v.complete_b;
  o.text = v.equal ? paint("equal", "32", color) + '\n' : paint("different", "31", color) + '\n';
  o.text += v.str().substr(v.str().find('\n') + 1);
  std::vector<Word> diff = v.only_in_a;
  diff.insert(diff.end(), v.only_in_b.begin(), v.only_in_b.end());
  if (!diff.empty()) {
    const Word w = *std::min_element(diff.begin(), diff.end(), shortlex_less);
    const bool in_a = std::find(v.only_in_a.begin(), v.only_in_a.end(), w) != v.only_in_a.end();
    o.text += "counterexample: " + render_word(w) + (in_a ? " (first only)" : " (second only)") + '\n';
  }
  o.code = v.equal ? kOk : (v.complete_a && v.complete_b ? kNegative : kIncomplete);
  return o;
}

Json set_json(const SymbolSet& s) { return Json(std::vector<std::string>(s.begin(), s.end())); }

Output cmd_nonempty(const RunConfig& c) {
  const System s = load(c.inputs.at(0));
  Output o;
  Json comps = Json::array();
  auto describe = [&](const std::string& name, const SymbolSet& lhs, const SymbolSet& useful) {
    SymbolSet useless;
    for (const auto& x : lhs)
      if (!useful.contains(x)) useless.insert(x);
    Json j;
    j["component"] = name;
    j["useful"] = set_json(useful);
    j["unproductive"] = set_json(useless);
    comps.push_back(j);
    std::string line = name + ": useful {";
    for (const auto& x : useful) line += ' ' + x;
    line += " } unproductive {";
    for (const auto& x : useless) line += ' ' + x;
    o.text += line + " }\n";
  };
  std::vector<Rule> all;
  for (const Rule* r : s.all_rules()) all.push_back(*r);
  for (const auto& comp : s.components) {
    SymbolSet lhs;
    for (const auto& r : comp.rules) lhs.insert(r.lhs);
    describe(comp.name, lhs, useful_nonterminals(comp));
  }
  const SymbolSet terminals(s.terminals.begin(), s.terminals.end());
  const SymbolSet useful = useful_nonterminals(all, terminals);
  const bool start_useful = useful.contains(s.start);
  o.text += std::string("start symbol ") + s.start +
            (start_useful ? " derives a terminal word without regulation\n"
                          : " derives no terminal word even without regulation\n");
  Json r;
  r["components"] = comps;
  r["system_useful"] = set_json(useful);
  r["start_useful"] = start_useful;
  o.json["report"] = r;
  o.json["complete"] = true;
  return o;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err, bool color) {
  const auto started = Clock::now();
  Output o;
  try {
    if (config.command == "parse") o = cmd_parse(config);
    else if (config.command == "enum") o = cmd_enum(config);
    else if (config.command == "derive") o = cmd_derive(config);
    else if (config.command == "transform") o = cmd_transform(config);
    else if (config.command == "equiv") o = cmd_equiv(config, color);
    else if (config.command == "nonempty") o = cmd_nonempty(config);
    else throw Error("unknown command '" + config.command + "'");
  } catch (const Error& e) {
    err << paint("error:", "31", color) << ' ' << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << paint("error:", "31", color) << ' ' << e.what() << '\n';
    return kInputError;
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
  if (config.json) {
    Json j;
    j["command"] = config.command;
    j["params"] = params_json(config);
    for (auto& [key, value] : o.json.items()) j[key] = value;
    if (config.timing) j["elapsed_ms"] = ms;
    out << j.dump(2) << '\n';
  } else {
    out << o.text;
    if (config.timing) out << "# elapsed: " << ms << " ms\n";
  }
  return o.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  RunConfig c;
  CLI::App app{"Regulated rewriting workbench: grammar systems, modes and constructions", "rrw"};
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", c.json, "machine-readable output");
    sub->add_flag("--timing", c.timing, "report elapsed time");
  };
  auto limits = [&](CLI::App* sub) {
    sub->add_option("--max-len", c.max_len, "longest word to enumerate");
    sub->add_option("--workspace", c.workspace, "longest sentential form (default 2*max-len+4)");
    sub->add_option("--step-budget", c.step_budget, "rule applications per activation");
    sub->add_option("--form-budget", c.form_budget, "distinct forms per enumeration");
  };

  CLI::App* parse = app.add_subcommand("parse", "validate a system and print it canonically");
  parse->add_option("input", c.inputs, "system file")->required()->expected(1);
  common(parse);

  CLI::App* en = app.add_subcommand("enum", "enumerate the bounded language");
  en->add_option("input", c.inputs, "system file")->required()->expected(1);
  en->add_option("--mode", c.mode, "derivation mode (t, *, =k, <=k, >=k)");
  en->add_flag("--reference", c.reference, "use the reference enumerator");
  limits(en);
  common(en);

  CLI::App* derive = app.add_subcommand("derive", "search a derivation of one word");
  derive->add_option("input", c.inputs, "system file")->required()->expected(1);
  derive->add_option("--word", c.word, "terminal word, e.g. aab or \"a b\"")->required();
  derive->add_option("--mode", c.mode, "derivation mode");
  derive->add_flag("--trace", c.trace, "print the derivation");
  limits(derive);
  common(derive);

  CLI::App* transform = app.add_subcommand("transform", "apply a construction");
  transform->add_option("input", c.inputs, "system file")->required()->expected(1);
  std::vector<std::string> ids;
  for (const auto& info : construction_catalog()) ids.push_back(info.id);
  transform->add_option("--construction", c.construction, "construction identifier")
      ->required()
      ->check(CLI::IsMember(ids));
  transform->add_option("--mode", c.mode, "mode parameter of the construction");
  transform->add_option("--k", c.k, "step bound parameter");
  transform->add_flag("--compact", c.compact_erasing, "gc-to-ocdgs: one success component per rule");
  transform->add_flag("--normalized", c.normalized, "frccd-eq2-to-cdfrc: two rules per component");
  transform->add_option("-o,--output", c.output, "write the system to this file");
  common(transform);

  CLI::App* equiv = app.add_subcommand("equiv", "compare two bounded languages");
  equiv->add_option("inputs", c.inputs, "two system files")->required()->expected(2);
  equiv->add_option("--mode,--mode-a", c.mode, "mode of the first system (and of both by default)");
  equiv->add_option("--mode-b", c.mode_b, "mode of the second system");
  limits(equiv);
  common(equiv);

  CLI::App* nonempty = app.add_subcommand("nonempty", "useful nonterminals per component");
  nonempty->add_option("input", c.inputs, "system file")->required()->expected(1);
  common(nonempty);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  c.command = app.get_subcommands().front()->get_name();
  return execute(c, out, err, color);
}

}  // namespace rrw::cli
