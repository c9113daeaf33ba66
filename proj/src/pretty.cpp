#include "extrec/parser.hpp"

namespace extrec {

std::string Namer::operator()(const TyVar &v) {
  auto it = names_.find(v);
  if (it != names_.end()) return it->second;
  std::size_t i = count_++;
  std::string name(1, static_cast<char>('a' + i % 26));
  if (i >= 26) name += std::to_string(i / 26);
  names_.emplace(v, name);
  return name;
}

namespace {

std::string mono(const Type &t, Namer &n);

std::string fields(const FieldMap &f, Namer &n) {
  std::string out;
  for (const auto &[l, t] : f) {
    if (!out.empty()) out += ", ";
    out += l + ": " + mono(t, n);
  }
  return out;
}

std::string atomty(const Type &t, Namer &n) {
  switch (t->tag) {
    case TypeTag::Base:
      return base_type_name(t->base);
    case TypeTag::Var:
      return "'" + n(t->var);
    case TypeTag::Record:
      return "{" + fields(t->fields, n) + "}";
    default:
      return "(" + mono(t, n) + ")";
  }
}

std::string extty(const Type &t, Namer &n) {
  if (t->tag == TypeTag::Ext || t->tag == TypeTag::Contr) {
    std::string op = t->tag == TypeTag::Ext ? " + {" : " - {";
    return extty(t->left, n) + op + t->label + ": " + mono(t->right, n) + "}";
  }
  return atomty(t, n);
}

std::string mono(const Type &t, Namer &n) {
  if (t->tag == TypeTag::Arrow) {
    std::string dom = t->left->tag == TypeTag::Arrow ? "(" + mono(t->left, n) + ")"
                                                     : extty(t->left, n);
    return dom + " -> " + mono(t->right, n);
  }
  return extty(t, n);
}

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out.push_back(c);
    }
  }
  return out + "\"";
}

// Levels: 0 any term, 1 application operand position, 2 postfix.
std::string term(const Term &t, int level) {
  auto wrap = [&](int needed, std::string s) {
    return level > needed ? "(" + s + ")" : s;
  };
  switch (t->tag) {
    case TermTag::Var:
      return t->name;
    case TermTag::Const:
      switch (t->literal.type) {
        case BaseType::Int:
          return std::to_string(std::get<long long>(t->literal.value));
        case BaseType::Bool:
          return std::get<bool>(t->literal.value) ? "true" : "false";
        case BaseType::String:
          return quote(std::get<std::string>(t->literal.value));
      }
      return "?";
    case TermTag::Abs:
      return wrap(0, "\\" + t->name + ". " + term(t->first, 0));
    case TermTag::Let:
      return wrap(0, "let " + t->name + " = " + term(t->first, 0) + " in " +
                         term(t->second, 0));
    case TermTag::App:
      return wrap(1, term(t->first, 1) + " " + term(t->second, 2));
    case TermTag::Select:
      return term(t->first, 2) + "." + t->label;
    case TermTag::Record: {
      std::string out = "{";
      for (std::size_t i = 0; i < t->fields.size(); ++i) {
        if (i) out += ", ";
        out += t->fields[i].first + " = " + term(t->fields[i].second, 0);
      }
      return out + "}";
    }
    case TermTag::Modify:
      return "modify(" + term(t->first, 0) + ", " + t->label + ", " +
             term(t->second, 0) + ")";
    case TermTag::Extend:
      return "extend(" + term(t->first, 0) + ", " + t->label + ", " +
             term(t->second, 0) + ")";
    case TermTag::Remove:
      return "remove(" + term(t->first, 0) + ", " + t->label + ")";
  }
  return "?";
}

template <class Map, class Line>
std::string lines(const Map &m, Line line) {
  std::string out;
  for (const auto &[k, v] : m) {
    if (!out.empty()) out += "\n";
    out += line(k, v);
  }
  return out;
}

}  // namespace

std::string pretty(const Term &t) { return term(t, 0); }

std::string pretty(const Type &t, Namer &n) { return mono(t, n); }

std::string pretty(const Type &t) {
  Namer n;
  return mono(t, n);
}

std::string pretty(const Kind &k, Namer &n) {
  if (k.universal) return "U";
  std::string l = fields(k.lefts, n);
  std::string r = fields(k.rights, n);
  return "<<" + (l.empty() ? " " : l + " ") + "||" + (r.empty() ? " " : " " + r) +
         ">>";
}

std::string pretty(const Kind &k) {
  Namer n;
  return pretty(k, n);
}

std::string pretty(const PolyType &t, Namer &n) {
  std::string out;
  for (const auto &q : t.quantifiers) {
    out += "forall '" + n(q.var) + " :: ";
    out += pretty(q.kind, n) + ". ";
  }
  return out + mono(t.body, n);
}

std::string pretty(const PolyType &t) {
  Namer n;
  return pretty(t, n);
}

std::string pretty(const KindAssignment &K, Namer &n) {
  return lines(K, [&](const TyVar &v, const Kind &k) {
    std::string name = "'" + n(v);
    return name + " :: " + pretty(k, n);
  });
}

std::string pretty(const KindAssignment &K) {
  Namer n;
  return pretty(K, n);
}

std::string pretty(const TypeAssignment &G, Namer &n) {
  return lines(G, [&](const std::string &x, const PolyType &s) {
    return x + " : " + pretty(s, n);
  });
}

std::string pretty(const Substitution &s, Namer &n) {
  return lines(s, [&](const TyVar &v, const Type &t) {
    std::string name = "'" + n(v);
    return name + " := " + mono(t, n);
  });
}

std::string pretty(const Substitution &s) {
  Namer n;
  return pretty(s, n);
}

}  // namespace extrec
