// Copyright 2026 The bddlkit Authors
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

#include "bddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "bddl/errors.hpp"

namespace bddl {

namespace {

bool is_symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '.' ||
         c == '_' || c == '-' || c == '?' || c == ':';
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Predicates with a fixed arity of 2. Other predicate names (non-kinematic
// states like "cooked") parse with any arity >= 1 so classification can see
// them; they only fail later, at evaluation.
bool is_arity2_predicate(const std::string& name) {
  return kinematic_predicates().count(name) > 0 || name == kInRoomPredicate;
}

}  // namespace

const std::set<std::string>& kinematic_predicates() {
  static const std::set<std::string> kSet = {"nextto",   "inside", "onfloor",
                                             "ontop",    "touching", "under"};
  return kSet;
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;

  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  };

  while (i < source.size()) {
    const char c = source[i];
    if (c == ';') {
      while (i < source.size() && source[i] != '\n') {
        advance(source[i]);
        ++i;
      }
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(c);
      ++i;
      continue;
    }
    if (c == '(') {
      tokens.push_back({TokenKind::OpenParen, "(", line, column});
      advance(c);
      ++i;
      continue;
    }
    if (c == ')') {
      tokens.push_back({TokenKind::CloseParen, ")", line, column});
      advance(c);
      ++i;
      continue;
    }
    if (is_symbol_char(c)) {
      const int start_line = line;
      const int start_column = column;
      std::string text;
      while (i < source.size() && is_symbol_char(source[i])) {
        text.push_back(source[i]);
        advance(source[i]);
        ++i;
      }
      TokenKind kind = TokenKind::Symbol;
      if (text[0] == '?') {
        kind = TokenKind::Variable;
      } else if (text[0] == ':') {
        kind = TokenKind::Keyword;
        text = to_lower(text);
      }
      tokens.push_back({kind, std::move(text), start_line, start_column});
      continue;
    }
    throw IllegalCharacterError({line, column}, c);
  }
  return tokens;
}

namespace {

// Recursive-descent parser over the token stream. Term declarations are
// collected before :init/:goal (canonical section order), which lets every
// reference check report the offending token's position.
class ProblemParser {
 public:
  explicit ProblemParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Activity parse() {
    Activity activity;
    expect_open("(define");
    expect_symbol_text("define");
    expect_open("(problem");
    expect_symbol_text("problem");
    activity.problem_name = expect_name("problem name");
    expect_close();

    expect_section(":domain");
    activity.domain_name = expect_name("domain name");
    expect_close();

    const Token objects_kw = expect_section(":objects");
    activity.objects = parse_objects(objects_kw);

    const Token init_kw = expect_section(":init");
    activity.init = parse_init(init_kw);

    expect_section(":goal");
    activity.goal = parse_condition();
    expect_close();

    expect_close();
    if (pos_ != tokens_.size()) {
      throw SyntaxError(position_of(pos_), "end of input");
    }
    return activity;
  }

 private:
  const Token& peek() const {
    if (pos_ >= tokens_.size()) {
      throw SyntaxError(end_position(), "more input");
    }
    return tokens_[pos_];
  }

  Token take() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  SourcePos position_of(std::size_t index) const {
    if (index < tokens_.size()) {
      return {tokens_[index].line, tokens_[index].column};
    }
    return end_position();
  }

  SourcePos end_position() const {
    if (tokens_.empty()) return {1, 1};
    const Token& last = tokens_.back();
    return {last.line, last.column + static_cast<int>(last.text.size())};
  }

  void expect_open(const std::string& what) {
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != TokenKind::OpenParen) {
      throw SyntaxError(position_of(pos_), what);
    }
    ++pos_;
  }

  void expect_close() {
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != TokenKind::CloseParen) {
      throw SyntaxError(position_of(pos_), ")");
    }
    ++pos_;
  }

  void expect_symbol_text(const std::string& text) {
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != TokenKind::Symbol ||
        to_lower(tokens_[pos_].text) != text) {
      throw SyntaxError(position_of(pos_), "'" + text + "'");
    }
    ++pos_;
  }

  std::string expect_name(const std::string& what) {
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != TokenKind::Symbol) {
      throw SyntaxError(position_of(pos_), what);
    }
    return take().text;
  }

  Token expect_section(const std::string& keyword) {
    expect_open("(" + keyword);
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != TokenKind::Keyword) {
      throw SyntaxError(position_of(pos_), keyword);
    }
    Token kw = take();
    if (kw.text != keyword) {
      throw SemanticError({kw.line, kw.column}, kw.text,
                          "unknown or out-of-order section " + kw.text +
                              " (expected " + keyword + ")");
    }
    return kw;
  }

  std::vector<ObjectDecl> parse_objects(const Token& section_kw) {
    std::vector<ObjectDecl> decls;
    std::vector<Token> pending;
    while (peek().kind != TokenKind::CloseParen) {
      const Token t = take();
      if (t.kind != TokenKind::Symbol) {
        throw SyntaxError({t.line, t.column}, "object term or '-'");
      }
      if (t.text == "-") {
        if (pending.empty()) {
          throw SyntaxError({t.line, t.column}, "term before '-'");
        }
        const Token synset = take();
        if (synset.kind != TokenKind::Symbol || synset.text == "-") {
          throw SyntaxError({synset.line, synset.column}, "synset name");
        }
        for (const Token& term : pending) {
          if (declared_.count(term.text) > 0) {
            throw SemanticError({term.line, term.column}, term.text,
                                "duplicate declaration of term " + term.text);
          }
          declared_.insert(term.text);
          decls.push_back({term.text, synset.text});
        }
        pending.clear();
      } else {
        pending.push_back(t);
      }
    }
    if (!pending.empty()) {
      const Token& t = pending.back();
      throw SyntaxError({t.line, t.column + static_cast<int>(t.text.size())},
                        "'- synset' after term list");
    }
    expect_close();
    (void)section_kw;
    return decls;
  }

  std::vector<Condition> parse_init(const Token& section_kw) {
    std::vector<Condition> init;
    while (peek().kind != TokenKind::CloseParen) {
      const Token open = peek();
      expect_open("init entry");
      const Token head = peek();
      if (head.kind == TokenKind::Symbol && to_lower(head.text) == "not") {
        take();
        expect_open("atom");
        Condition atom = parse_atom(/*bound_vars=*/{});
        expect_close();
        init.push_back(Condition::negation(std::move(atom)));
      } else {
        init.push_back(parse_atom(/*bound_vars=*/{}));
      }
      expect_close();
      (void)open;
    }
    if (init.empty()) {
      throw SemanticError({section_kw.line, section_kw.column}, ":init",
                          ":init requires at least one entry");
    }
    expect_close();
    return init;
  }

  // Caller has consumed the opening paren. Consumes up to (not including)
  // the matching close paren.
  Condition parse_atom(const std::vector<std::string>& bound_vars) {
    const Token head = take();
    if (head.kind != TokenKind::Symbol) {
      throw SyntaxError({head.line, head.column}, "predicate name");
    }
    const std::string predicate = to_lower(head.text);
    std::vector<std::string> args;
    std::size_t index = 0;
    while (peek().kind != TokenKind::CloseParen) {
      const Token arg = take();
      if (arg.kind == TokenKind::Variable) {
        if (std::find(bound_vars.begin(), bound_vars.end(), arg.text) ==
            bound_vars.end()) {
          throw SemanticError({arg.line, arg.column}, arg.text,
                              "variable " + arg.text + " is not quantifier-bound");
        }
      } else if (arg.kind == TokenKind::Symbol) {
        // inroom's second argument names a scene room, not a declared term.
        const bool room_ref = predicate == kInRoomPredicate && index == 1;
        if (!room_ref && declared_.count(arg.text) == 0) {
          throw SemanticError({arg.line, arg.column}, arg.text,
                              "term " + arg.text + " is not declared in :objects");
        }
      } else {
        throw SyntaxError({arg.line, arg.column}, "atom argument");
      }
      args.push_back(arg.text);
      ++index;
    }
    if (args.empty()) {
      throw SyntaxError(position_of(pos_), "at least one atom argument");
    }
    if (is_arity2_predicate(predicate) && args.size() != 2) {
      throw SemanticError({head.line, head.column}, predicate,
                          "predicate " + predicate + " takes 2 arguments, got " +
                              std::to_string(args.size()));
    }
    return Condition::atom(predicate, std::move(args));
  }

  Condition parse_condition() { return parse_condition_impl({}); }

  Condition parse_condition_impl(std::vector<std::string> bound_vars) {
    expect_open("condition");
    const Token head = peek();
    if (head.kind != TokenKind::Symbol) {
      throw SyntaxError({head.line, head.column}, "condition head symbol");
    }
    const std::string name = to_lower(head.text);

    if (name == "and" || name == "or") {
      take();
      std::vector<Condition> children;
      while (peek().kind != TokenKind::CloseParen) {
        children.push_back(parse_condition_impl(bound_vars));
      }
      expect_close();
      if (children.empty()) {
        throw SemanticError({head.line, head.column}, name,
                            name + " requires at least one child");
      }
      return name == "and" ? Condition::conjunction(std::move(children))
                           : Condition::disjunction(std::move(children));
    }
    if (name == "not") {
      take();
      Condition child = parse_condition_impl(bound_vars);
      expect_close();
      return Condition::negation(std::move(child));
    }
    if (name == "imply") {
      take();
      Condition antecedent = parse_condition_impl(bound_vars);
      Condition consequent = parse_condition_impl(bound_vars);
      expect_close();
      return Condition::implication(std::move(antecedent), std::move(consequent));
    }
    if (name == "forall" || name == "exists" || name == "forn") {
      take();
      int count = 0;
      if (name == "forn") {
        expect_open("(n)");
        const Token n_tok = take();
        if (n_tok.kind != TokenKind::Symbol) {
          throw SyntaxError({n_tok.line, n_tok.column}, "positive integer");
        }
        try {
          std::size_t consumed = 0;
          count = std::stoi(n_tok.text, &consumed);
          if (consumed != n_tok.text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw SyntaxError({n_tok.line, n_tok.column}, "positive integer");
        }
        if (count < 1) {
          throw SemanticError({n_tok.line, n_tok.column}, n_tok.text,
                              "forn count must be >= 1");
        }
        expect_close();
      }
      expect_open("(?var - synset)");
      const Token var = take();
      if (var.kind != TokenKind::Variable) {
        throw SyntaxError({var.line, var.column}, "quantifier variable");
      }
      expect_symbol_text("-");
      const Token synset = take();
      if (synset.kind != TokenKind::Symbol) {
        throw SyntaxError({synset.line, synset.column}, "synset name");
      }
      expect_close();
      bound_vars.push_back(var.text);
      Condition body = parse_condition_impl(bound_vars);
      expect_close();
      const ConditionKind kind = name == "forall"  ? ConditionKind::ForAll
                                 : name == "exists" ? ConditionKind::Exists
                                                    : ConditionKind::ForN;
      return Condition::quantifier(kind, var.text, synset.text, std::move(body),
                                   count);
    }

    // Plain atom.
    Condition atom = parse_atom(bound_vars);
    expect_close();
    return atom;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> declared_;
};

void validate_condition(const Condition& c, std::vector<std::string> bound_vars,
                        const std::set<std::string>& declared) {
  switch (c.kind) {
    case ConditionKind::Atom: {
      if (c.predicate.empty()) {
        throw SemanticError({1, 1}, c.predicate, "atom with empty predicate");
      }
      if (c.args.empty()) {
        throw SemanticError({1, 1}, c.predicate, "atom with no arguments");
      }
      std::size_t index = 0;
      for (const auto& a : c.args) {
        const bool room_ref = c.predicate == kInRoomPredicate && index == 1;
        if (!a.empty() && a[0] == '?') {
          if (std::find(bound_vars.begin(), bound_vars.end(), a) ==
              bound_vars.end()) {
            throw SemanticError({1, 1}, a, "variable " + a + " unbound");
          }
        } else if (!room_ref && declared.count(a) == 0) {
          throw SemanticError({1, 1}, a, "term " + a + " undeclared");
        }
        ++index;
      }
      return;
    }
    case ConditionKind::Not:
      if (c.children.size() != 1) {
        throw SemanticError({1, 1}, "not", "not requires exactly one child");
      }
      break;
    case ConditionKind::And:
    case ConditionKind::Or:
      if (c.children.empty()) {
        throw SemanticError({1, 1}, c.kind == ConditionKind::And ? "and" : "or",
                            "connective requires at least one child");
      }
      break;
    case ConditionKind::Imply:
      if (c.children.size() != 2) {
        throw SemanticError({1, 1}, "imply", "imply requires two children");
      }
      break;
    case ConditionKind::ForAll:
    case ConditionKind::Exists:
    case ConditionKind::ForN:
      if (c.children.size() != 1 || c.variable.empty() || c.variable[0] != '?' ||
          c.synset.empty()) {
        throw SemanticError({1, 1}, c.variable, "malformed quantifier");
      }
      if (c.kind == ConditionKind::ForN && c.count < 1) {
        throw SemanticError({1, 1}, c.variable, "forn count must be >= 1");
      }
      bound_vars.push_back(c.variable);
      break;
  }
  for (const auto& child : c.children) {
    validate_condition(child, bound_vars, declared);
  }
}

void serialize_condition(const Condition& c, int indent, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (c.kind) {
    case ConditionKind::Atom: {
      out << pad << '(' << c.predicate;
      for (const auto& a : c.args) out << ' ' << a;
      out << ')';
      return;
    }
    case ConditionKind::Not:
      out << pad << "(not\n";
      serialize_condition(c.children[0], indent + 2, out);
      out << '\n' << pad << ')';
      return;
    case ConditionKind::And:
    case ConditionKind::Or:
      out << pad << (c.kind == ConditionKind::And ? "(and" : "(or") << '\n';
      for (const auto& child : c.children) {
        serialize_condition(child, indent + 2, out);
        out << '\n';
      }
      out << pad << ')';
      return;
    case ConditionKind::Imply:
      out << pad << "(imply\n";
      serialize_condition(c.children[0], indent + 2, out);
      out << '\n';
      serialize_condition(c.children[1], indent + 2, out);
      out << '\n' << pad << ')';
      return;
    case ConditionKind::ForAll:
    case ConditionKind::Exists:
    case ConditionKind::ForN:
      out << pad << '(';
      if (c.kind == ConditionKind::ForAll) {
        out << "forall ";
      } else if (c.kind == ConditionKind::Exists) {
        out << "exists ";
      } else {
        out << "forn (" << c.count << ") ";
      }
      out << '(' << c.variable << " - " << c.synset << ")\n";
      serialize_condition(c.children[0], indent + 2, out);
      out << '\n' << pad << ')';
      return;
  }
}

}  // namespace

void for_each_atom(const Condition& condition,
                   const std::function<void(const Condition&)>& fn) {
  if (condition.kind == ConditionKind::Atom) {
    fn(condition);
    return;
  }
  for (const auto& child : condition.children) {
    for_each_atom(child, fn);
  }
}

Activity parse_activity(std::string_view source) {
  ProblemParser parser(tokenize(source));
  return parser.parse();
}

void validate_activity(const Activity& activity) {
  if (activity.problem_name.empty() || activity.domain_name.empty()) {
    throw SemanticError({1, 1}, activity.problem_name,
                        "problem and domain names must be non-empty");
  }
  std::set<std::string> declared;
  for (const auto& decl : activity.objects) {
    if (decl.synset.empty()) {
      throw SemanticError({1, 1}, decl.term, "empty synset for " + decl.term);
    }
    if (!declared.insert(decl.term).second) {
      throw SemanticError({1, 1}, decl.term,
                          "duplicate declaration of term " + decl.term);
    }
  }
  if (activity.init.empty()) {
    throw SemanticError({1, 1}, ":init", ":init requires at least one entry");
  }
  for (const auto& entry : activity.init) {
    const bool atom = entry.kind == ConditionKind::Atom;
    const bool negated_atom = entry.kind == ConditionKind::Not &&
                              entry.children.size() == 1 &&
                              entry.children[0].kind == ConditionKind::Atom;
    if (!atom && !negated_atom) {
      throw SemanticError({1, 1}, "", "init entries must be atoms or negated atoms");
    }
    validate_condition(entry, {}, declared);
  }
  validate_condition(activity.goal, {}, declared);
}

std::string serialize_activity(const Activity& activity) {
  validate_activity(activity);
  std::ostringstream out;
  out << "(define (problem " << activity.problem_name << ")\n";
  out << "  (:domain " << activity.domain_name << ")\n";
  out << "  (:objects\n";
  // Consecutive terms with the same synset share one "- synset" group, which
  // round-trips to the identical declaration order.
  std::size_t i = 0;
  while (i < activity.objects.size()) {
    std::size_t j = i;
    out << "   ";
    while (j < activity.objects.size() &&
           activity.objects[j].synset == activity.objects[i].synset) {
      out << ' ' << activity.objects[j].term;
      ++j;
    }
    out << " - " << activity.objects[i].synset << '\n';
    i = j;
  }
  out << "  )\n";
  out << "  (:init\n";
  for (const auto& entry : activity.init) {
    if (entry.kind == ConditionKind::Not) {
      out << "    (not ";
      serialize_condition(entry.children[0], 0, out);
      out << ")\n";
    } else {
      serialize_condition(entry, 4, out);
      out << '\n';
    }
  }
  out << "  )\n";
  out << "  (:goal\n";
  serialize_condition(activity.goal, 4, out);
  out << "\n  )\n";
  out << ")\n";
  return out.str();
}

KinematicClassification classify_kinematic(const Activity& activity) {
  return classify_kinematic(activity, kinematic_predicates());
}

KinematicClassification classify_kinematic(const Activity& activity,
                                           const std::set<std::string>& supported) {
  std::set<std::string> unsupported;
  auto visit = [&](const Condition& atom) {
    if (atom.predicate == kInRoomPredicate) return;
    if (supported.count(atom.predicate) == 0) {
      unsupported.insert(atom.predicate);
    }
  };
  for (const auto& entry : activity.init) {
    for_each_atom(entry, visit);
  }
  for_each_atom(activity.goal, visit);

  KinematicClassification result;
  result.unsupported_predicates.assign(unsupported.begin(), unsupported.end());
  result.kinematic_only = result.unsupported_predicates.empty();
  return result;
}

std::string condition_to_sexpr(const Condition& condition) {
  std::ostringstream out;
  switch (condition.kind) {
    case ConditionKind::Atom: {
      out << '(' << condition.predicate;
      for (const auto& a : condition.args) out << ' ' << a;
      out << ')';
      break;
    }
    case ConditionKind::Not:
      out << "(not " << condition_to_sexpr(condition.children[0]) << ')';
      break;
    case ConditionKind::And:
    case ConditionKind::Or: {
      out << (condition.kind == ConditionKind::And ? "(and" : "(or");
      for (const auto& child : condition.children) {
        out << ' ' << condition_to_sexpr(child);
      }
      out << ')';
      break;
    }
    case ConditionKind::Imply:
      out << "(imply " << condition_to_sexpr(condition.children[0]) << ' '
          << condition_to_sexpr(condition.children[1]) << ')';
      break;
    case ConditionKind::ForAll:
    case ConditionKind::Exists:
    case ConditionKind::ForN:
      out << '(';
      if (condition.kind == ConditionKind::ForAll) {
        out << "forall ";
      } else if (condition.kind == ConditionKind::Exists) {
        out << "exists ";
      } else {
        out << "forn (" << condition.count << ") ";
      }
      out << '(' << condition.variable << " - " << condition.synset << ") "
          << condition_to_sexpr(condition.children[0]) << ')';
      break;
  }
  return out.str();
}

}  // namespace bddl
