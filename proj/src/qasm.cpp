#include "qcut/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace qcut {

namespace {

struct Statement {
  std::string text;
  int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::Invalid, "qasm line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Splits source into ';'-terminated statements, tracking line numbers and
// dropping '//' comments.
std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  std::string current;
  int line = 1, start_line = 1;
  bool in_comment = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      in_comment = false;
      current += ' ';
      continue;
    }
    if (in_comment) continue;
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      in_comment = true;
      ++i;
      continue;
    }
    if (c == ';') {
      std::string s = strip(current);
      if (!s.empty()) out.push_back({s, start_line});
      current.clear();
      start_line = line;
      continue;
    }
    if (strip(current).empty()) start_line = line;
    current += c;
  }
  if (!strip(current).empty()) fail(line, "missing ';'");
  return out;
}

// Angle grammar: FLOAT | [-]pi | [-]pi/NUM | NUM*pi | NUM*pi/NUM.
double parse_angle(const std::string& raw, int line) {
  std::string s = strip(raw);
  if (s.empty()) fail(line, "empty angle");
  double sign = 1.0;
  if (s[0] == '-') {
    sign = -1.0;
    s = strip(s.substr(1));
  }
  double mult = 1.0, div = 1.0;
  size_t pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    try {
      size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) fail(line, "bad angle '" + raw + "'");
      return sign * v;
    } catch (const std::exception&) {
      fail(line, "bad angle '" + raw + "'");
    }
  }
  std::string before = strip(s.substr(0, pi_pos));
  std::string after = strip(s.substr(pi_pos + 2));
  if (!before.empty()) {
    if (before.back() != '*') fail(line, "bad angle '" + raw + "'");
    mult = std::stod(strip(before.substr(0, before.size() - 1)));
  }
  if (!after.empty()) {
    if (after.front() != '/') fail(line, "bad angle '" + raw + "'");
    div = std::stod(strip(after.substr(1)));
    if (div == 0) fail(line, "division by zero in angle");
  }
  return sign * mult * M_PI / div;
}

struct QubitRef {
  std::string reg;
  int index;
};

QubitRef parse_ref(const std::string& raw, int line) {
  std::string s = strip(raw);
  size_t lb = s.find('[');
  size_t rb = s.find(']');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
    fail(line, "expected reg[idx], got '" + raw + "'");
  }
  QubitRef ref;
  ref.reg = strip(s.substr(0, lb));
  try {
    ref.index = std::stoi(s.substr(lb + 1, rb - lb - 1));
  } catch (const std::exception&) {
    fail(line, "bad index in '" + raw + "'");
  }
  return ref;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Circuit parse_qasm(const std::string& text) {
  auto statements = split_statements(text);
  Circuit circuit;
  std::string qreg_name, creg_name;
  int creg_size = 0;
  bool has_qreg = false;
  std::vector<int> measured;

  for (const auto& [stmt, line] : statements) {
    std::istringstream iss(stmt);
    std::string head;
    iss >> head;
    if (head == "OPENQASM") continue;
    if (head == "include") continue;
    if (head == "barrier") continue;
    if (head == "qreg") {
      if (has_qreg) fail(line, "only one quantum register supported");
      std::string rest;
      std::getline(iss, rest);
      QubitRef ref = parse_ref(rest, line);
      if (ref.index <= 0) fail(line, "qreg size must be positive");
      qreg_name = ref.reg;
      circuit.n_qubits = ref.index;
      has_qreg = true;
      continue;
    }
    if (head == "creg") {
      std::string rest;
      std::getline(iss, rest);
      QubitRef ref = parse_ref(rest, line);
      creg_name = ref.reg;
      creg_size = ref.index;
      continue;
    }
    if (!has_qreg) fail(line, "statement before qreg declaration");
    if (head == "measure") {
      std::string rest;
      std::getline(iss, rest);
      size_t arrow = rest.find("->");
      if (arrow == std::string::npos) fail(line, "measure needs '->'");
      QubitRef q = parse_ref(rest.substr(0, arrow), line);
      QubitRef c = parse_ref(rest.substr(arrow + 2), line);
      if (q.reg != qreg_name) fail(line, "unknown register '" + q.reg + "'");
      if (c.reg != creg_name) fail(line, "unknown register '" + c.reg + "'");
      if (q.index < 0 || q.index >= circuit.n_qubits) fail(line, "qubit index overflow");
      if (c.index < 0 || c.index >= creg_size) fail(line, "classical index overflow");
      measured.push_back(q.index);
      continue;
    }
    // Gate statement: name[(params)] qubit[,qubit].
    std::string name = head;
    std::vector<double> params;
    size_t paren = stmt.find('(');
    std::string args;
    if (paren != std::string::npos && paren < stmt.find(' ')) {
      name = strip(stmt.substr(0, paren));
      size_t close = stmt.find(')', paren);
      if (close == std::string::npos) fail(line, "unbalanced '('");
      for (const std::string& p : split_on(stmt.substr(paren + 1, close - paren - 1), ',')) {
        params.push_back(parse_angle(p, line));
      }
      args = stmt.substr(close + 1);
    } else {
      args = stmt.substr(head.size());
    }
    auto kind = gate_from_name(name);
    if (!kind) fail(line, "unsupported gate '" + name + "'");
    std::vector<int> qubits;
    for (const std::string& part : split_on(args, ',')) {
      QubitRef ref = parse_ref(part, line);
      if (ref.reg != qreg_name) fail(line, "unknown register '" + ref.reg + "'");
      if (ref.index < 0 || ref.index >= circuit.n_qubits) fail(line, "qubit index overflow");
      qubits.push_back(ref.index);
    }
    try {
      circuit.add(*kind, std::move(params), std::move(qubits));
    } catch (const Error& e) {
      fail(line, e.what());
    }
  }
  if (!has_qreg) throw Error(ErrorCode::Invalid, "qasm: no qreg declaration");
  circuit.set_measured(std::move(measured));
  return circuit;
}

std::string emit_qasm(const Circuit& circuit) {
  circuit.validate();
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.n_qubits << "];\n";
  if (!circuit.measured.empty()) {
    out << "creg c[" << circuit.measured.size() << "];\n";
  }
  char buf[64];
  for (const Gate& g : circuit.gates) {
    out << gate_name(g.kind);
    if (!g.params.empty()) {
      out << '(';
      for (size_t i = 0; i < g.params.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", g.params[i]);
        out << (i ? "," : "") << buf;
      }
      out << ')';
    }
    out << ' ';
    for (size_t i = 0; i < g.qubits.size(); ++i) {
      out << (i ? "," : "") << "q[" << g.qubits[i] << ']';
    }
    out << ";\n";
  }
  for (size_t i = 0; i < circuit.measured.size(); ++i) {
    out << "measure q[" << circuit.measured[i] << "] -> c[" << i << "];\n";
  }
  return out.str();
}

}  // namespace qcut
