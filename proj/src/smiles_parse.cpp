#include <array>
#include <cctype>
#include <optional>
#include <set>
#include <string>

#include "graphsal/molgraph.hpp"

namespace graphsal {

namespace {

const std::set<std::string>& known_elements() {
  static const std::set<std::string> table = {
      "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al",
      "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Ti", "V",  "Cr", "Mn", "Fe",
      "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr",
      "Zr", "Mo", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",
      "Xe", "Cs", "Ba", "W",  "Pt", "Au", "Hg", "Tl", "Pb", "Bi"};
  return table;
}

bool is_aromatic_symbol(char c) {
  return c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's';
}

BondOrder default_bond(const Atom& a, const Atom& b) {
  return a.aromatic && b.aromatic ? BondOrder::aromatic : BondOrder::single;
}

struct RingOpening {
  int atom = -1;
  std::optional<BondOrder> order;
  size_t offset = 0;
};

struct BranchOpen {
  int prev = -1;
  size_t offset = 0;
  int atoms_at_open = 0;
};

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  MolecularGraph run() {
    if (text_.empty()) throw ParseError("empty SMILES", 0);
    while (pos_ < text_.size()) step();
    finish();
    return std::move(graph_);
  }

private:
  [[noreturn]] void fail(const std::string& message, size_t offset) const {
    throw ParseError(message, offset);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void step() {
    const char c = text_[pos_];
    switch (c) {
      case '-': take_bond(BondOrder::single); return;
      case '=': take_bond(BondOrder::double_bond); return;
      case '#': take_bond(BondOrder::triple); return;
      case ':': take_bond(BondOrder::aromatic); return;
      case '(': {
        if (prev_ < 0) fail("branch before any atom", pos_);
        if (pending_) fail("bond symbol before '('", *pending_offset_);
        branch_stack_.push_back({prev_, pos_, graph_.atom_count()});
        ++pos_;
        return;
      }
      case ')': {
        if (branch_stack_.empty()) fail("unbalanced ')'", pos_);
        if (pending_) fail("dangling bond symbol before ')'", *pending_offset_);
        if (branch_stack_.back().atoms_at_open == graph_.atom_count())
          fail("empty branch", pos_);
        prev_ = branch_stack_.back().prev;
        branch_stack_.pop_back();
        ++pos_;
        return;
      }
      case '.': fail("multi-fragment SMILES not supported", pos_);
      case '%': {
        if (pos_ + 2 >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
          fail("expected two digits after '%'", pos_);
        const int label = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
        ring_closure(label, pos_);
        pos_ += 3;
        return;
      }
      default: break;
    }
    if (c >= '1' && c <= '9') {
      ring_closure(c - '0', pos_);
      ++pos_;
      return;
    }
    if (c == '[') {
      take_atom(parse_bracket_atom());
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      take_atom(parse_organic_atom());
      return;
    }
    if (is_aromatic_symbol(c)) {
      Atom atom;
      atom.element = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      atom.aromatic = true;
      ++pos_;
      take_atom(std::move(atom));
      return;
    }
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  void take_bond(BondOrder order) {
    if (prev_ < 0) fail("bond symbol before any atom", pos_);
    if (pending_) fail("two consecutive bond symbols", pos_);
    pending_ = order;
    pending_offset_ = pos_;
    ++pos_;
  }

  Atom parse_organic_atom() {
    // two-character organic-subset symbols first
    if (pos_ + 1 < text_.size()) {
      const std::string two = std::string(text_.substr(pos_, 2));
      if (two == "Cl" || two == "Br") {
        pos_ += 2;
        return Atom{two, 0, false};
      }
    }
    const char c = text_[pos_];
    static const std::string organic = "BCNOPSFI";
    if (organic.find(c) == std::string::npos)
      fail(std::string("element '") + c + "' must be written as a bracket atom", pos_);
    ++pos_;
    return Atom{std::string(1, c), 0, false};
  }

  Atom parse_bracket_atom() {
    const size_t open = pos_;
    ++pos_; // consume '['
    if (pos_ >= text_.size()) fail("unterminated bracket atom", open);
    if (std::isdigit(static_cast<unsigned char>(peek())))
      fail("isotope specifications not supported", pos_);

    Atom atom;
    const char c = peek();
    if (is_aromatic_symbol(c)) {
      atom.element = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      atom.aromatic = true;
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::string symbol(1, c);
      std::string longest = symbol;
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        longest = symbol + text_[pos_ + 1];
        if (known_elements().count(longest)) symbol = longest;
      }
      if (symbol == "H") fail("explicit hydrogen atoms not supported (hydrogens are implicit)", pos_);
      if (!known_elements().count(symbol)) fail("unknown element '" + longest + "'", pos_);
      atom.element = symbol;
      pos_ += symbol.size();
    } else {
      fail(std::string("unexpected character '") + c + "' in bracket atom", pos_);
    }

    // hydrogen count: parsed and discarded, hydrogens stay implicit
    if (peek() == 'H') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }

    if (peek() == '+' || peek() == '-') {
      const char sign_char = peek();
      const int sign = sign_char == '+' ? 1 : -1;
      int repeats = 0;
      while (peek() == sign_char) {
        ++repeats;
        ++pos_;
      }
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        if (repeats > 1) fail("malformed charge", pos_);
        int value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          value = value * 10 + (peek() - '0');
          ++pos_;
        }
        atom.formal_charge = sign * value;
      } else {
        atom.formal_charge = sign * repeats;
      }
    }

    if (peek() != ']') fail("expected ']' to close bracket atom", pos_);
    ++pos_;
    return atom;
  }

  void take_atom(Atom atom) {
    const int idx = graph_.add_atom(std::move(atom));
    if (prev_ >= 0) {
      const BondOrder order =
          pending_ ? *pending_ : default_bond(graph_.atom(prev_), graph_.atom(idx));
      graph_.add_bond(prev_, idx, order);
    }
    prev_ = idx;
    pending_.reset();
    pending_offset_.reset();
  }

  void ring_closure(int label, size_t offset) {
    if (prev_ < 0) fail("ring closure before any atom", offset);
    RingOpening& slot = ring_[label];
    if (slot.atom < 0) {
      slot = RingOpening{prev_, pending_, offset};
      pending_.reset();
      pending_offset_.reset();
      return;
    }
    if (slot.atom == prev_) fail("ring closure bonds an atom to itself", offset);
    if (pending_ && slot.order && *pending_ != *slot.order)
      fail("conflicting bond orders for ring closure " + std::to_string(label), offset);
    const BondOrder order =
        pending_ ? *pending_
                 : (slot.order ? *slot.order
                               : default_bond(graph_.atom(slot.atom), graph_.atom(prev_)));
    if (graph_.has_bond(slot.atom, prev_))
      fail("ring closure duplicates an existing bond", offset);
    graph_.add_bond(slot.atom, prev_, order);
    slot = RingOpening{};
    pending_.reset();
    pending_offset_.reset();
  }

  void finish() const {
    if (pending_) throw ParseError("dangling bond symbol at end of input", *pending_offset_);
    if (!branch_stack_.empty())
      throw ParseError("unclosed branch", branch_stack_.back().offset);
    for (size_t label = 0; label < ring_.size(); ++label)
      if (ring_[label].atom >= 0)
        throw ParseError("unclosed ring closure " + std::to_string(label),
                         ring_[label].offset);
  }

  std::string_view text_;
  size_t pos_ = 0;
  MolecularGraph graph_;
  int prev_ = -1;
  std::optional<BondOrder> pending_;
  std::optional<size_t> pending_offset_;
  std::vector<BranchOpen> branch_stack_;
  std::array<RingOpening, 100> ring_{};
};

} // namespace

MolecularGraph parse_smiles(std::string_view text) { return Parser(text).run(); }

} // namespace graphsal
