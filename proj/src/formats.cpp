#include "argdial/formats.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace argdial {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_body(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\\\"";
    else if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  out += '"';
  return out;
}

std::string fmt_double(double d) {
  std::ostringstream out;
  out << std::setprecision(17) << d;
  return out.str();
}

std::optional<ShiftMode> shift_mode_from_string(std::string_view s) {
  if (s == "replace") return ShiftMode::Replace;
  if (s == "embed") return ShiftMode::Embed;
  if (s == "pop") return ShiftMode::Pop;
  return std::nullopt;
}

struct Tok {
  enum Kind { Ident, Number, Str, Punct, Newline, End };
  Kind kind = End;
  std::string text;
  int line = 1;
  int col = 1;
};

// Aborts a parse after its diagnostic has been recorded.
struct ParseAbort {};

class Lexer {
public:
  Lexer(std::string_view text, bool keep_newlines,
        std::vector<Diagnostic>& diags)
      : text_(text), keep_newlines_(keep_newlines), diags_(diags) {}

  const Tok& peek() {
    if (!has_) {
      cur_ = lex();
      has_ = true;
    }
    return cur_;
  }

  Tok take() {
    peek();
    has_ = false;
    return cur_;
  }

private:
  char at(size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(int line, int col, const std::string& message) {
    diags_.push_back({line, col, message});
    throw ParseAbort{};
  }

  Tok lex() {
    for (;;) {
      char c = at(pos_);
      if (pos_ >= text_.size()) return {Tok::End, "", line_, col_};
      if (c == '\n') {
        Tok t{Tok::Newline, "\n", line_, col_};
        advance();
        if (keep_newlines_) return t;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && at(pos_) != '\n') advance();
        continue;
      }
      break;
    }

    Tok t;
    t.line = line_;
    t.col = col_;
    char c = at(pos_);

    if (ident_start(c)) {
      t.kind = Tok::Ident;
      while (true) {
        char b = at(pos_);
        if (ident_body(b)) {
          t.text += b;
          advance();
        } else if (b == ':' && (std::isalnum(static_cast<unsigned char>(
                                    at(pos_ + 1))) ||
                                at(pos_ + 1) == '_')) {
          // Colons join compound node ids; a trailing colon is punctuation.
          t.text += b;
          advance();
        } else {
          break;
        }
      }
      return t;
    }

    if (digit(c) || (c == '-' && digit(at(pos_ + 1)))) {
      t.kind = Tok::Number;
      if (c == '-') {
        t.text += c;
        advance();
      }
      while (digit(at(pos_))) {
        t.text += at(pos_);
        advance();
      }
      if (at(pos_) == '.' && digit(at(pos_ + 1))) {
        t.text += '.';
        advance();
        while (digit(at(pos_))) {
          t.text += at(pos_);
          advance();
        }
      }
      return t;
    }

    if (c == '"') {
      t.kind = Tok::Str;
      advance();
      for (;;) {
        char b = at(pos_);
        if (pos_ >= text_.size() || b == '\n')
          fail(t.line, t.col, "unterminated string");
        if (b == '"') {
          advance();
          return t;
        }
        if (b == '\\') {
          advance();
          char e = at(pos_);
          if (e == '"') t.text += '"';
          else if (e == '\\') t.text += '\\';
          else if (e == 'n') t.text += '\n';
          else fail(line_, col_, std::string("unknown escape '\\") + e + "'");
          advance();
          continue;
        }
        t.text += b;
        advance();
      }
    }

    if (c == '-' && at(pos_ + 1) == '>') {
      advance();
      advance();
      t.kind = Tok::Punct;
      t.text = "->";
      return t;
    }

    if (c == '{' || c == '}' || c == ':' || c == ';' || c == '=' || c == ',') {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance();
      return t;
    }

    fail(line_, col_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  bool keep_newlines_;
  std::vector<Diagnostic>& diags_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Tok cur_;
  bool has_ = false;
};

class Parser {
public:
  Parser(Lexer& lexer, std::vector<Diagnostic>& diags)
      : lexer_(lexer), diags_(diags) {}

  const Tok& peek() { return lexer_.peek(); }
  Tok take() { return lexer_.take(); }

  [[noreturn]] void fail(const Tok& at, const std::string& message) {
    diags_.push_back({at.line, at.col, message});
    throw ParseAbort{};
  }

  Tok expect(Tok::Kind kind, const std::string& what) {
    Tok t = take();
    if (t.kind != kind) fail(t, "expected " + what);
    return t;
  }

  Tok expect_ident(const std::string& what) { return expect(Tok::Ident, what); }
  Tok expect_string(const std::string& what) { return expect(Tok::Str, what); }

  void expect_keyword(const std::string& word) {
    Tok t = take();
    if (t.kind != Tok::Ident || t.text != word)
      fail(t, "expected '" + word + "'");
  }

  void expect_punct(const std::string& p) {
    Tok t = take();
    if (t.kind != Tok::Punct || t.text != p)
      fail(t, "expected '" + p + "'");
  }

  bool try_punct(const std::string& p) {
    if (peek().kind == Tok::Punct && peek().text == p) {
      take();
      return true;
    }
    return false;
  }

  int expect_index(const std::string& what) {
    Tok t = expect(Tok::Number, what);
    if (t.text.find('.') != std::string::npos || t.text[0] == '-')
      fail(t, what + " must be a positive integer");
    long v = std::strtol(t.text.c_str(), nullptr, 10);
    if (v < 1 || v > 1000000) fail(t, what + " out of range");
    return static_cast<int>(v);
  }

  double expect_double(const std::string& what) {
    Tok t = expect(Tok::Number, what);
    return std::strtod(t.text.c_str(), nullptr);
  }

  void skip_newlines() {
    while (peek().kind == Tok::Newline) take();
  }

  void end_line() {
    Tok t = take();
    if (t.kind != Tok::Newline && t.kind != Tok::End)
      fail(t, "unexpected trailing tokens");
  }

private:
  Lexer& lexer_;
  std::vector<Diagnostic>& diags_;
};

SententialForm parse_form_checked(Parser& p, const Tok& tok, FormRole role) {
  try {
    return parse_form(tok.text, role);
  } catch (const Error& e) {
    p.fail(tok, e.what());
  }
}

}  // namespace

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  for (const auto& d : diagnostics)
    out << "line " << d.line << ", col " << d.column << ": " << d.message
        << "\n";
  return out.str();
}

std::optional<std::vector<Scheme>> parse_schemes(
    std::string_view text, std::vector<Diagnostic>& diagnostics,
    bool structural_only) {
  size_t base = diagnostics.size();
  std::vector<Scheme> out;
  try {
    Lexer lexer(text, false, diagnostics);
    Parser p(lexer, diagnostics);
    while (p.peek().kind != Tok::End) {
      p.expect_keyword("scheme");
      Scheme s;
      Tok id = p.expect_string("a quoted scheme id");
      if (id.text.empty()) p.fail(id, "scheme id must not be empty");
      s.id = id.text;
      s.name = id.text;
      if (!structural_only)
        for (const auto& prev : out)
          if (prev.id == s.id) p.fail(id, "duplicate id '" + s.id + "'");
      p.expect_keyword("class");
      Tok cls = p.expect_ident("a scheme class (A, B, or C)");
      auto c = scheme_class_from_string(cls.text);
      if (!c) p.fail(cls, "unknown scheme class '" + cls.text + "'");
      s.scheme_class = *c;
      p.expect_keyword("qualifier");
      Tok q = p.expect_ident("a qualifier level");
      auto ql = qualifier_from_string(q.text);
      if (!ql) p.fail(q, "unknown qualifier '" + q.text + "'");
      s.default_qualifier = *ql;
      p.expect_punct("{");
      bool have_conclusion = false;
      while (!p.try_punct("}")) {
        Tok kw = p.expect_ident("a scheme item (var, premise, conclusion, cq)");
        if (kw.text == "var") {
          do {
            Tok v = p.expect_ident("a variable name");
            if (std::find(s.variables.begin(), s.variables.end(), v.text) !=
                s.variables.end())
              p.fail(v, "duplicate variable '" + v.text + "'");
            s.variables.push_back(v.text);
          } while (p.peek().kind == Tok::Ident);
          p.expect_punct(";");
        } else if (kw.text == "premise") {
          Tok role = p.expect_ident("a premise role");
          auto r = form_role_from_string(role.text);
          if (!r || *r == FormRole::Conclusion)
            p.fail(role, "unknown premise role '" + role.text + "'");
          p.expect_punct(":");
          Tok tmpl = p.expect_string("a premise template");
          p.expect_punct(";");
          s.premises.push_back(parse_form_checked(p, tmpl, *r));
        } else if (kw.text == "conclusion") {
          if (have_conclusion) p.fail(kw, "duplicate conclusion");
          p.expect_punct(":");
          Tok tmpl = p.expect_string("a conclusion template");
          p.expect_punct(";");
          s.conclusion = parse_form_checked(p, tmpl, FormRole::Conclusion);
          have_conclusion = true;
        } else if (kw.text == "cq") {
          CriticalQuestion cq;
          cq.index = p.expect_index("critical question index");
          for (const auto& prev : s.cqs)
            if (prev.index == cq.index)
              p.fail(kw, "duplicate critical question index " +
                             std::to_string(cq.index));
          Tok kind = p.expect_ident("a critical question kind");
          auto k = cq_kind_from_string(kind.text);
          if (!k) p.fail(kind, "unknown critical question kind '" + kind.text + "'");
          cq.kind = *k;
          p.expect_punct(":");
          Tok tmpl = p.expect_string("a question template");
          p.expect_punct(";");
          cq.text = parse_form_checked(p, tmpl, FormRole::Conclusion).text;
          s.cqs.push_back(std::move(cq));
        } else {
          p.fail(kw, "unknown scheme item '" + kw.text + "'");
        }
      }
      if (!structural_only) {
        if (!have_conclusion)
          p.fail(id, "scheme '" + s.id +
                         "' has no conclusion (well-formedness condition (iv) "
                         "requires exactly one)");
        ValidationReport report = validate_scheme(s);
        for (const auto& r : report.results)
          if (!r.passed)
            p.fail(id, "scheme '" + s.id +
                           "' fails well-formedness condition (" + r.condition +
                           "): " + r.detail);
      }
      out.push_back(std::move(s));
    }
  } catch (const ParseAbort&) {
  } catch (const std::exception& e) {
    diagnostics.push_back({0, 0, std::string("internal error: ") + e.what()});
  }
  if (diagnostics.size() != base) return std::nullopt;
  return out;
}

std::string serialize_scheme(const Scheme& scheme) {
  std::ostringstream out;
  out << "scheme " << quote(scheme.id) << " class "
      << to_string(scheme.scheme_class) << " qualifier "
      << to_string(scheme.default_qualifier) << " {\n";
  if (!scheme.variables.empty()) {
    out << "  var";
    for (const auto& v : scheme.variables) out << " " << v;
    out << ";\n";
  }
  for (const auto& premise : scheme.premises)
    out << "  premise " << to_string(premise.role) << ": "
        << quote(premise.text) << ";\n";
  out << "  conclusion: " << quote(scheme.conclusion.text) << ";\n";
  for (const auto& cq : scheme.cqs)
    out << "  cq " << cq.index << " " << to_string(cq.kind) << ": "
        << quote(cq.text) << ";\n";
  out << "}\n";
  return out.str();
}

std::string serialize_schemes(const std::vector<Scheme>& schemes) {
  std::ostringstream out;
  for (size_t i = 0; i < schemes.size(); ++i) {
    if (i) out << "\n";
    out << serialize_scheme(schemes[i]);
  }
  return out.str();
}

std::optional<ArgumentGraph> parse_graph(std::string_view text,
                                         const SchemeRegistry& registry,
                                         std::vector<Diagnostic>& diagnostics) {
  size_t base = diagnostics.size();
  ArgumentGraph graph;
  try {
    Lexer lexer(text, true, diagnostics);
    Parser p(lexer, diagnostics);
    for (;;) {
      p.skip_newlines();
      if (p.peek().kind == Tok::End) break;
      Tok kw = p.expect_ident("a directive (argument, attack, pose, answer)");
      if (kw.text == "argument") {
        Tok id = p.expect_ident("an argument id");
        Tok sid = p.expect_ident("a scheme id");
        if (!registry.contains(sid.text))
          p.fail(sid, "unknown scheme \"" + sid.text + "\"");
        const Scheme& scheme = registry.lookup(sid.text);
        Substitution sub;
        while (p.peek().kind == Tok::Ident) {
          Tok var = p.take();
          p.expect_punct("=");
          Tok val = p.expect_string("a binding value");
          if (std::find(scheme.variables.begin(), scheme.variables.end(),
                        var.text) == scheme.variables.end())
            p.fail(var, "unknown variable '" + var.text + "' for scheme \"" +
                            sid.text + "\"");
          try {
            sub.bind(var.text, val.text);
          } catch (const Error& e) {
            p.fail(var, e.what());
          }
        }
        p.end_line();
        try {
          graph = add_argument(graph, instantiate_scheme(scheme, sub, id.text));
        } catch (const Error& e) {
          p.fail(id, e.what());
        }
      } else if (kw.text == "attack") {
        Tok a = p.expect_ident("an attacker node id");
        p.expect_punct("->");
        Tok b = p.expect_ident("a target node id");
        Tok kind = p.expect_ident("an attack kind");
        auto k = attack_kind_from_string(kind.text);
        if (!k) p.fail(kind, "unknown attack kind '" + kind.text + "'");
        std::optional<std::string> premise;
        if (p.peek().kind == Tok::Str) premise = p.take().text;
        p.end_line();
        if (premise && *k != AttackKind::Undermine)
          p.fail(kind, "premise metadata applies only to undermines");
        try {
          graph = add_attack(graph, a.text, b.text, *k);
          graph.edges.back().premise = premise;
        } catch (const Error& e) {
          p.fail(a, e.what());
        }
      } else if (kw.text == "pose") {
        Tok id = p.expect_ident("an argument id");
        int index = p.expect_index("critical question index");
        p.end_line();
        try {
          graph = pose_cq(graph, id.text, index);
        } catch (const Error& e) {
          p.fail(id, e.what());
        }
      } else if (kw.text == "answer") {
        Tok id = p.expect_ident("an argument id");
        int index = p.expect_index("critical question index");
        Tok answer = p.expect_string("an answer");
        p.end_line();
        try {
          graph = answer_cq(graph, id.text, index, answer.text);
        } catch (const Error& e) {
          p.fail(id, e.what());
        }
      } else {
        p.fail(kw, "unknown directive '" + kw.text + "'");
      }
    }
  } catch (const ParseAbort&) {
  } catch (const std::exception& e) {
    diagnostics.push_back({0, 0, std::string("internal error: ") + e.what()});
  }
  if (diagnostics.size() != base) return std::nullopt;
  return graph;
}

std::string serialize_graph(const ArgumentGraph& graph) {
  std::ostringstream out;
  for (const auto& [id, inst] : graph.arguments) {
    out << "argument " << id << " " << inst.scheme_id();
    for (const auto& [var, val] : inst.substitution.bindings)
      out << " " << var << "=" << quote(val);
    out << "\n";
  }
  for (const auto& e : graph.cq_events) {
    out << "pose " << e.target_argument << " " << e.cq_index << "\n";
    if (e.status == CqStatus::Answered)
      out << "answer " << e.target_argument << " " << e.cq_index << " "
          << quote(e.answer_text.value_or("")) << "\n";
  }
  for (const auto& e : graph.edges) {
    if (!e.user_edge) continue;
    out << "attack " << e.attacker << " -> " << e.target << " "
        << to_string(e.kind);
    if (e.premise) out << " " << quote(*e.premise);
    out << "\n";
  }
  return out.str();
}

std::string export_graph(const ArgumentGraph& graph) {
  std::ostringstream out;
  out << serialize_graph(graph);
  Labelling labels = grounded_labelling(graph);
  for (const auto& node : graph.node_ids())
    out << "# label " << node << " " << to_string(labels.at(node)) << "\n";
  for (const auto& [id, inst] : graph.arguments) {
    ArgumentEvaluation ev = evaluate_argument(graph, id);
    out << "# evaluate " << id << " label " << to_string(ev.label)
        << " qualifier " << to_string(ev.qualifier) << " open-cqs ";
    if (ev.open_cqs.empty()) {
      out << "-";
    } else {
      for (size_t i = 0; i < ev.open_cqs.size(); ++i)
        out << (i ? "," : "") << ev.open_cqs[i];
    }
    out << "\n";
  }
  return out.str();
}

std::string export_graph_machine(const ArgumentGraph& graph) {
  nlohmann::ordered_json j;
  j["arguments"] = nlohmann::ordered_json::array();
  for (const auto& [id, inst] : graph.arguments) {
    nlohmann::ordered_json a;
    a["id"] = id;
    a["scheme"] = inst.scheme_id();
    a["qualifier"] = to_string(inst.qualifier);
    a["claim"] = inst.claim();
    a["bindings"] = nlohmann::ordered_json::object();
    for (const auto& [var, val] : inst.substitution.bindings)
      a["bindings"][var] = val;
    a["statements"] = nlohmann::ordered_json::array();
    for (const auto& st : inst.statements)
      a["statements"].push_back({{"role", to_string(st.role)}, {"text", st.text}});
    j["arguments"].push_back(std::move(a));
  }
  j["events"] = nlohmann::ordered_json::array();
  for (const auto& e : graph.cq_events) {
    nlohmann::ordered_json ev;
    ev["argument"] = e.target_argument;
    ev["cq"] = e.cq_index;
    ev["status"] = e.status == CqStatus::Answered ? "answered" : "posed";
    if (e.answer_text) ev["answer"] = *e.answer_text;
    j["events"].push_back(std::move(ev));
  }
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : graph.node_ids()) {
    std::string kind = "argument";
    if (node.rfind("cq:", 0) == 0) kind = "cq";
    else if (node.rfind("ans:", 0) == 0) kind = "answer";
    j["nodes"].push_back({{"id", node}, {"kind", kind}});
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : graph.edges) {
    nlohmann::ordered_json edge;
    edge["attacker"] = e.attacker;
    edge["target"] = e.target;
    edge["kind"] = to_string(e.kind);
    edge["user"] = e.user_edge;
    if (e.premise) edge["premise"] = *e.premise;
    j["edges"].push_back(std::move(edge));
  }
  Labelling labels = grounded_labelling(graph);
  j["labelling"] = nlohmann::ordered_json::object();
  for (const auto& node : graph.node_ids())
    j["labelling"][node] = to_string(labels.at(node));
  j["evaluations"] = nlohmann::ordered_json::array();
  for (const auto& [id, inst] : graph.arguments) {
    ArgumentEvaluation ev = evaluate_argument(graph, id);
    j["evaluations"].push_back({{"argument", id},
                                {"label", to_string(ev.label)},
                                {"qualifier", to_string(ev.qualifier)},
                                {"open_cqs", ev.open_cqs}});
  }
  return j.dump(2) + "\n";
}

bool ScriptMove::operator==(const ScriptMove& o) const {
  // Line numbers are provenance, not content.
  return speaker == o.speaker && kind == o.kind && statement == o.statement &&
         argument_id == o.argument_id && scheme_id == o.scheme_id &&
         bindings == o.bindings && cq_index == o.cq_index &&
         answer_text == o.answer_text && cost == o.cost &&
         shift_mode == o.shift_mode && shift_target == o.shift_target;
}

std::optional<ScriptDocument> parse_script(
    std::string_view text, std::vector<Diagnostic>& diagnostics) {
  size_t base = diagnostics.size();
  ScriptDocument doc;
  try {
    Lexer lexer(text, true, diagnostics);
    Parser p(lexer, diagnostics);
    p.skip_newlines();
    p.expect_keyword("dialogue");
    Tok type = p.expect_ident("a dialogue type");
    auto k = dialogue_kind_from_string(type.text);
    if (!k) p.fail(type, "unknown dialogue type '" + type.text + "'");
    doc.type = *k;
    Tok situation = p.expect_ident("a situation");
    auto s = situation_from_string(situation.text);
    if (!s) p.fail(situation, "unknown situation '" + situation.text + "'");
    doc.situation = *s;
    Tok goal = p.expect_ident("a goal");
    auto g = dialogue_goal_from_string(goal.text);
    if (!g) p.fail(goal, "unknown goal '" + goal.text + "'");
    doc.goal = *g;
    p.expect_keyword("participants");
    doc.participants[0] = p.expect_ident("the proponent's name").text;
    doc.participants[1] = p.expect_ident("the respondent's name").text;
    p.end_line();

    for (;;) {
      p.skip_newlines();
      if (p.peek().kind == Tok::End) break;
      Tok first = p.expect_ident("a speaker or 'close'");
      ScriptMove m;
      m.line = first.line;
      if (first.text == "close" &&
          (p.peek().kind == Tok::Newline || p.peek().kind == Tok::End)) {
        m.kind = MoveKind::Close;
        p.end_line();
        doc.moves.push_back(std::move(m));
        continue;
      }
      m.speaker = first.text;
      if (m.speaker != doc.participants[0] &&
          m.speaker != doc.participants[1])
        p.fail(first,
               "speaker '" + m.speaker + "' is not a declared participant");
      Tok kindTok = p.expect_ident("a move kind");
      auto kind = move_kind_from_string(kindTok.text);
      if (!kind) p.fail(kindTok, "unknown move kind '" + kindTok.text + "'");
      m.kind = *kind;
      switch (m.kind) {
        case MoveKind::Assert:
        case MoveKind::Concede:
        case MoveKind::Retract:
          m.statement = p.expect_string("a statement").text;
          break;
        case MoveKind::Argue: {
          m.argument_id = p.expect_ident("an argument id").text;
          m.scheme_id = p.expect_ident("a scheme id").text;
          while (p.peek().kind == Tok::Ident) {
            Tok var = p.take();
            p.expect_punct("=");
            Tok val = p.expect_string("a binding value");
            m.bindings.emplace_back(var.text, val.text);
          }
          break;
        }
        case MoveKind::PoseCq:
          m.argument_id = p.expect_ident("an argument id").text;
          m.cq_index = p.expect_index("critical question index");
          break;
        case MoveKind::AnswerCq:
          m.argument_id = p.expect_ident("an argument id").text;
          m.cq_index = p.expect_index("critical question index");
          m.answer_text = p.expect_string("an answer").text;
          break;
        case MoveKind::Offer:
          m.statement = p.expect_string("a statement").text;
          if (p.peek().kind == Tok::Ident && p.peek().text == "cost") {
            Tok costKw = p.take();
            m.cost = p.expect_double("a cost");
            if (*m.cost < 0)
              p.fail(costKw, "offer cost must not be negative");
          }
          break;
        case MoveKind::Accept:
          if (p.peek().kind == Tok::Str) m.statement = p.take().text;
          break;
        case MoveKind::ProposeShift: {
          Tok mode = p.expect_ident("a shift mode (embed or replace)");
          auto sm = shift_mode_from_string(mode.text);
          if (!sm) p.fail(mode, "unknown shift mode '" + mode.text + "'");
          m.shift_mode = *sm;
          Tok target = p.expect_ident("a dialogue type");
          auto tk = dialogue_kind_from_string(target.text);
          if (!tk) p.fail(target, "unknown dialogue type '" + target.text + "'");
          m.shift_target = *tk;
          break;
        }
        case MoveKind::AcceptShift:
        case MoveKind::Close:
          break;
      }
      p.end_line();
      doc.moves.push_back(std::move(m));
    }
  } catch (const ParseAbort&) {
  } catch (const std::exception& e) {
    diagnostics.push_back({0, 0, std::string("internal error: ") + e.what()});
  }
  if (diagnostics.size() != base) return std::nullopt;
  return doc;
}

namespace {

std::string render_script_move(const ScriptMove& m) {
  if (m.kind == MoveKind::Close && m.speaker.empty()) return "close";
  std::ostringstream out;
  out << m.speaker << " " << to_string(m.kind);
  switch (m.kind) {
    case MoveKind::Assert:
    case MoveKind::Concede:
    case MoveKind::Retract:
      out << " " << quote(m.statement);
      break;
    case MoveKind::Argue:
      out << " " << m.argument_id << " " << m.scheme_id;
      for (const auto& [var, val] : m.bindings)
        out << " " << var << "=" << quote(val);
      break;
    case MoveKind::PoseCq:
      out << " " << m.argument_id << " " << m.cq_index;
      break;
    case MoveKind::AnswerCq:
      out << " " << m.argument_id << " " << m.cq_index << " "
          << quote(m.answer_text);
      break;
    case MoveKind::Offer:
      out << " " << quote(m.statement);
      if (m.cost) out << " cost " << fmt_double(*m.cost);
      break;
    case MoveKind::Accept:
      if (!m.statement.empty()) out << " " << quote(m.statement);
      break;
    case MoveKind::ProposeShift:
      out << " " << to_string(m.shift_mode) << " " << to_string(m.shift_target);
      break;
    case MoveKind::AcceptShift:
    case MoveKind::Close:
      break;
  }
  return out.str();
}

}  // namespace

std::string serialize_script(const ScriptDocument& document) {
  std::ostringstream out;
  out << "dialogue " << to_string(document.type) << " "
      << to_string(document.situation) << " " << to_string(document.goal)
      << " participants " << document.participants[0] << " "
      << document.participants[1] << "\n";
  for (const auto& m : document.moves) out << render_script_move(m) << "\n";
  return out.str();
}

std::optional<std::vector<Move>> resolve_script_moves(
    const ScriptDocument& document, const SchemeRegistry& registry,
    std::vector<Diagnostic>& diagnostics) {
  size_t base = diagnostics.size();
  std::vector<Move> moves;
  for (const auto& m : document.moves) {
    switch (m.kind) {
      case MoveKind::Assert:
        moves.push_back(make_assert(m.speaker, m.statement));
        break;
      case MoveKind::Argue: {
        if (!registry.contains(m.scheme_id)) {
          diagnostics.push_back(
              {m.line, 1, "unknown scheme \"" + m.scheme_id + "\""});
          continue;
        }
        try {
          Substitution sub;
          for (const auto& [var, val] : m.bindings) sub.bind(var, val);
          moves.push_back(make_argue(
              m.speaker,
              instantiate_scheme(registry.lookup(m.scheme_id), sub,
                                 m.argument_id)));
        } catch (const Error& e) {
          diagnostics.push_back({m.line, 1, e.what()});
        }
        break;
      }
      case MoveKind::PoseCq:
        moves.push_back(make_pose_cq(m.speaker, m.argument_id, m.cq_index));
        break;
      case MoveKind::AnswerCq:
        moves.push_back(
            make_answer_cq(m.speaker, m.argument_id, m.cq_index, m.answer_text));
        break;
      case MoveKind::Concede:
        moves.push_back(make_concede(m.speaker, m.statement));
        break;
      case MoveKind::Retract:
        moves.push_back(make_retract(m.speaker, m.statement));
        break;
      case MoveKind::Offer:
        moves.push_back(make_offer(m.speaker, m.statement, m.cost));
        break;
      case MoveKind::Accept:
        moves.push_back(make_accept(m.speaker, m.statement));
        break;
      case MoveKind::ProposeShift:
        moves.push_back(
            make_propose_shift(m.speaker, m.shift_mode, m.shift_target));
        break;
      case MoveKind::AcceptShift:
        moves.push_back(make_accept_shift(m.speaker));
        break;
      case MoveKind::Close:
        moves.push_back(make_close(m.speaker));
        break;
    }
  }
  if (diagnostics.size() != base) return std::nullopt;
  return moves;
}

namespace {

std::string render_move(const Move& m) {
  if (m.kind == MoveKind::Close && m.speaker.empty()) return "close";
  std::ostringstream out;
  out << m.speaker << " " << to_string(m.kind);
  switch (m.kind) {
    case MoveKind::Assert:
    case MoveKind::Concede:
    case MoveKind::Retract: {
      if (const auto* s = std::get_if<std::string>(&m.payload))
        out << " " << quote(*s);
      break;
    }
    case MoveKind::Argue: {
      if (const auto* inst = std::get_if<ArgumentInstance>(&m.payload)) {
        out << " " << inst->id << " " << inst->scheme_id();
        for (const auto& [var, val] : inst->substitution.bindings)
          out << " " << var << "=" << quote(val);
      }
      break;
    }
    case MoveKind::PoseCq: {
      if (const auto* cq = std::get_if<CqPayload>(&m.payload))
        out << " " << cq->argument_id << " " << cq->cq_index;
      break;
    }
    case MoveKind::AnswerCq: {
      if (const auto* cq = std::get_if<CqPayload>(&m.payload))
        out << " " << cq->argument_id << " " << cq->cq_index << " "
            << quote(cq->answer_text);
      break;
    }
    case MoveKind::Offer: {
      if (const auto* offer = std::get_if<OfferPayload>(&m.payload)) {
        out << " " << quote(offer->statement);
        if (offer->cost) out << " cost " << fmt_double(*offer->cost);
      }
      break;
    }
    case MoveKind::Accept: {
      if (const auto* s = std::get_if<std::string>(&m.payload))
        if (!s->empty()) out << " " << quote(*s);
      break;
    }
    case MoveKind::ProposeShift: {
      if (const auto* shift = std::get_if<ShiftPayload>(&m.payload))
        out << " " << to_string(shift->mode) << " " << to_string(shift->target);
      break;
    }
    case MoveKind::AcceptShift:
    case MoveKind::Close:
      break;
  }
  return out.str();
}

std::string render_shift_entry(const ShiftEntry& e) {
  std::ostringstream out;
  out << "shift " << to_string(e.mode) << " " << to_string(e.from) << " -> "
      << to_string(e.to) << " turn " << e.turn;
  if (e.degraded) out << " degraded";
  return out.str();
}

}  // namespace

std::string render_transcript(const Transcript& transcript) {
  std::ostringstream out;
  out << "dialogue " << to_string(transcript.type) << " "
      << to_string(transcript.situation) << " " << to_string(transcript.goal)
      << " participants " << transcript.participants[0] << " "
      << transcript.participants[1] << "\n";
  for (const auto& rec : transcript.records) {
    out << "[" << rec.index << "] " << render_move(rec.move) << "\n";
    for (const auto& d : rec.deltas)
      out << "  " << (d.added ? "+" : "-") << d.participant << " "
          << quote(d.statement) << "\n";
    for (const auto& s : rec.shifts)
      out << "  " << render_shift_entry(s) << "\n";
  }
  if (transcript.status == TranscriptStatus::Violation)
    out << "violation " << quote(transcript.violation) << "\n";
  out << "status " << to_string(transcript.status) << "\n";
  out << "shift-report\n";
  for (const auto& s : transcript.final_state.shift_log)
    out << "  " << render_shift_entry(s) << "\n";
  out << "arguments\n";
  const ArgumentGraph& graph = transcript.final_state.graph;
  for (const auto& [id, inst] : graph.arguments) {
    ArgumentEvaluation ev = evaluate_argument(graph, id);
    out << "  " << id << " " << inst.scheme_id() << " label "
        << to_string(ev.label) << " qualifier " << to_string(ev.qualifier)
        << " open-cqs ";
    if (ev.open_cqs.empty()) {
      out << "-";
    } else {
      for (size_t i = 0; i < ev.open_cqs.size(); ++i)
        out << (i ? "," : "") << ev.open_cqs[i];
    }
    out << "\n";
  }
  return out.str();
}

std::optional<std::vector<ShiftEntry>> parse_transcript_shifts(
    std::string_view text, std::vector<Diagnostic>& diagnostics) {
  size_t base = diagnostics.size();
  std::vector<ShiftEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool in_section = false;
  bool found = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!in_section) {
      if (line == "shift-report") {
        in_section = true;
        found = true;
      }
      continue;
    }
    if (line.rfind("  shift ", 0) != 0) break;
    std::istringstream fields(line);
    std::string kw, mode, from, arrow, to, turn_kw, degraded;
    int turn = 0;
    fields >> kw >> mode >> from >> arrow >> to >> turn_kw >> turn;
    ShiftEntry e;
    auto m = shift_mode_from_string(mode);
    auto f = dialogue_kind_from_string(from);
    auto t = dialogue_kind_from_string(to);
    if (kw != "shift" || !m || !f || arrow != "->" || !t || turn_kw != "turn" ||
        fields.fail() || turn < 0) {
      diagnostics.push_back({line_no, 3, "malformed shift entry"});
      break;
    }
    e.mode = *m;
    e.from = *f;
    e.to = *t;
    e.turn = turn;
    fields >> degraded;
    if (!degraded.empty()) {
      if (degraded != "degraded") {
        diagnostics.push_back({line_no, 3, "malformed shift entry"});
        break;
      }
      e.degraded = true;
    }
    entries.push_back(e);
  }
  if (!found) diagnostics.push_back({1, 1, "no shift-report section"});
  if (diagnostics.size() != base) return std::nullopt;
  return entries;
}

}  // namespace argdial
