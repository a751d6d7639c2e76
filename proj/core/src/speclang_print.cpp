#include <sstream>
#include <string>

#include "gsys/speclang.hpp"

namespace gsys {

namespace {

void print_name_row(std::ostringstream& out, const std::vector<std::string>& row) {
  out << "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ", ";
    out << row[i];
  }
  out << "]";
}

void print_int_row(std::ostringstream& out, const std::vector<int>& row) {
  out << "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ", ";
    out << row[i];
  }
  out << "]";
}

void print_braced(std::ostringstream& out, const std::vector<std::string>& names) {
  out << "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ", ";
    out << names[i];
  }
  out << "}";
}

// Matrix rows one per line, indented under the field label.
template <typename Row, typename PrintRow>
void print_matrix(std::ostringstream& out, const std::vector<Row>& rows,
                  const std::string& indent, PrintRow print_row) {
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << indent << "  ";
    print_row(out, rows[i]);
    if (i + 1 < rows.size()) out << ",";
    out << "\n";
  }
  out << indent << "]";
}

struct ItemPrinter {
  std::ostringstream& out;

  void operator()(const MagmaDef& def) const {
    out << "magma " << def.name << " {\n  elements: ";
    print_name_row(out, def.elements);
    out << ";\n  op: ";
    print_matrix(out, def.op, "  ", print_name_row);
    out << ";\n}\n";
  }

  void operator()(const FnDef& def) const {
    out << "fn " << def.name << "/" << def.arity << " over " << def.magma << " = ";
    if (def.arity == 1) {
      print_name_row(out, def.values);
    } else {
      nested(def.values, def.arity, 0, def.values.size(), "");
    }
    out << ";\n";
  }

  // Prints values[begin, end) as a depth-deep nested list. A well-formed
  // table holds carrier^arity values, so the carrier size is recovered as
  // the integral depth-th root; counts without one nest as a single chunk,
  // which flattens back to the same value list.
  void nested(const std::vector<std::string>& values, int depth, std::size_t begin,
              std::size_t end, const std::string& indent) const {
    if (depth <= 1) {
      out << "[";
      for (std::size_t i = begin; i < end; ++i) {
        if (i > begin) out << ", ";
        out << values[i];
      }
      out << "]";
      return;
    }
    const std::size_t count = end - begin;
    std::size_t parts = 0;
    for (std::size_t p = 1; p <= count; ++p) {
      std::size_t power = 1;
      bool overflow = false;
      for (int d = 0; d < depth && !overflow; ++d) {
        power *= p;
        if (power > count) overflow = true;
      }
      if (!overflow && power == count) {
        parts = p;
        break;
      }
      if (overflow || power > count) break;
    }
    if (parts == 0) {
      out << "[";
      nested(values, depth - 1, begin, end, indent + "  ");
      out << "]";
      return;
    }
    const std::size_t chunk = count / parts;
    out << "[\n";
    for (std::size_t p = 0; p < parts; ++p) {
      out << indent << "  ";
      nested(values, depth - 1, begin + p * chunk, begin + (p + 1) * chunk, indent + "  ");
      if (p + 1 < parts) out << ",";
      out << "\n";
    }
    out << indent << "]";
  }

  void operator()(const SystemDef& def) const {
    out << "system " << def.name << " over " << def.magma << " vars ";
    print_braced(out, def.vars);
    if (def.domain) out << " domain " << *def.domain;
    out << " {\n";
    for (const RuleDef& rule : def.rules)
      out << "  " << rule.var << " := " << to_string(rule.term) << ";\n";
    out << "}\n";
  }

  void operator()(const TeamDef& def) const {
    out << "team " << def.name << " over " << def.magma << " vars ";
    print_braced(out, def.vars);
    out << " {\n";
    for (const std::vector<std::string>& row : def.rows) {
      out << "  (";
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ", ";
        out << row[i];
      }
      out << ");\n";
    }
    out << "}\n";
  }

  void operator()(const CoverDef& def) const {
    out << "cover " << def.name << " {\n  x: ";
    print_braced(out, def.x);
    out << ";\n  y: ";
    print_braced(out, def.y);
    out << ";\n}\n";
  }

  void operator()(const ClassicalDef& def) const {
    out << "classical " << def.name << " {\n";
    out << "  external: " << def.external << ";\n";
    out << "  motor: " << def.motor << ";\n";
    out << "  sensor: " << def.sensor << ";\n";
    out << "  internal: " << def.internal << ";\n";
    out << "  transition: ";
    print_matrix(out, def.transition, "  ", print_int_row);
    out << ";\n  sensor_map: ";
    print_int_row(out, def.sensor_map);
    out << ";\n  internal_transition: ";
    print_matrix(out, def.internal_transition, "  ", print_int_row);
    out << ";\n  policy: ";
    print_int_row(out, def.policy);
    out << ";\n}\n";
  }

  void operator()(const QueryDef& def) const {
    out << "query " << def.name << ": " << def.form << "(";
    for (std::size_t i = 0; i < def.args.size(); ++i) {
      if (i) out << ", ";
      print_arg(def.args[i]);
    }
    out << ");\n";
  }

  void print_arg(const QueryArg& arg) const {
    switch (arg.kind) {
      case QueryArg::Kind::Name:
        out << arg.name;
        return;
      case QueryArg::Kind::Int:
        out << arg.number;
        return;
      case QueryArg::Kind::Set:
        print_braced(out, arg.names);
        return;
      case QueryArg::Kind::List:
        print_name_row(out, arg.names);
        return;
      case QueryArg::Kind::Assign:
      case QueryArg::Kind::Map: {
        const char* sep = arg.kind == QueryArg::Kind::Assign ? " = " : " -> ";
        out << "{";
        for (std::size_t i = 0; i < arg.pairs.size(); ++i) {
          if (i) out << ", ";
          out << arg.pairs[i].first << sep << arg.pairs[i].second;
        }
        out << "}";
        return;
      }
    }
  }
};

}  // namespace

std::string pretty_print(const Document& d) {
  std::ostringstream out;
  ItemPrinter printer{out};
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    if (i) out << "\n";
    std::visit(printer, d.items[i]);
  }
  return out.str();
}

}  // namespace gsys
