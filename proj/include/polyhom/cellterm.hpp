#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polyhom/errors.hpp"

namespace polyhom {

class Polygraph;

/// Syntax tree for a cell of a free omega-category: a generator, an iterated
/// unit, or a binary i-composition. Comp(i, left, right) means left *_i right,
/// with left following right.
class CellTerm;
using TermPtr = std::shared_ptr<const CellTerm>;

class CellTerm {
  public:
    enum class Kind { Gen, Id, Comp };

    static TermPtr gen(std::string name);
    static TermPtr id(TermPtr inner);
    static TermPtr id(TermPtr inner, int wraps);
    /// Raw composition node; factors must already have equal dimension.
    static TermPtr comp_raw(int level, TermPtr left, TermPtr right);

    Kind kind() const { return kind_; }
    const std::string& gen_name() const { return gen_; }
    const TermPtr& inner() const { return inner_; }
    int level() const { return level_; }
    const TermPtr& left() const { return left_; }
    const TermPtr& right() const { return right_; }

    bool operator==(const CellTerm& other) const;

  private:
    CellTerm() = default;
    Kind kind_ = Kind::Gen;
    std::string gen_;        // Kind::Gen
    TermPtr inner_;          // Kind::Id
    int level_ = 0;          // Kind::Comp
    TermPtr left_, right_;   // Kind::Comp
};

enum class Side { Src, Tgt };

struct Generator {
    std::string name;
    int dim = 0;
    TermPtr src, tgt;  // absent when dim == 0
};

struct Violation {
    std::string code;
    std::string where;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// A finite polygraph: a table of generators whose boundaries are terms over
/// strictly lower-dimensional generators.
class Polygraph {
  public:
    void add_generator(Generator g);
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    const Generator& generator(const std::string& name) const;
    int max_dim() const { return max_dim_; }
    /// Generators of one dimension, sorted by name (the canonical basis order).
    const std::vector<std::string>& generators_of_dim(int n) const;
    /// All generators in insertion order (stable round-trip order).
    const std::vector<Generator>& all() const { return generators_; }

  private:
    std::vector<Generator> generators_;
    std::map<std::string, std::size_t> index_;
    std::map<int, std::vector<std::string>> by_dim_;
    int max_dim_ = 0;
};

int dim(const Polygraph& p, const CellTerm& t);
inline int dim(const Polygraph& p, const TermPtr& t) { return dim(p, *t); }

/// Composition that Id-pads the lower-dimensional factor so both sides have
/// equal dimension (and at least level+1).
TermPtr comp(const Polygraph& p, int level, TermPtr left, TermPtr right);

/// k-boundary of a term. k == dim returns the term itself.
TermPtr boundary(const Polygraph& p, const TermPtr& t, int k, Side side);

/// Flattened word of 1-generators (composition order: later arrows first)
/// together with the start/end objects.
struct Path1 {
    std::string src_object;
    std::string tgt_object;
    std::vector<std::string> arrows;
    bool operator==(const Path1&) const = default;
};

Path1 normal_form_1(const Polygraph& p, const TermPtr& t);

std::string object_of(const Polygraph& p, const TermPtr& t, Side side);  // 0-boundary
std::string to_string(const CellTerm& t);

/// Sound necessary equality of cells: exact normal forms in dimension <= 1,
/// endpoints plus constant-Z abelianization in dimension >= 2.
bool compare_cells(const Polygraph& p, const TermPtr& a, const TermPtr& b);

ValidationReport validate_polygraph(const Polygraph& p);

/// An omega-functor between polygraphs, given on generators.
struct OmegaFunctorData {
    const Polygraph* source = nullptr;
    const Polygraph* target = nullptr;
    std::map<std::string, TermPtr> images;

    static OmegaFunctorData identity(const Polygraph& p);
};

TermPtr apply_functor(const OmegaFunctorData& f, const TermPtr& t);
OmegaFunctorData compose(const OmegaFunctorData& outer, const OmegaFunctorData& inner);

/// Boundary preservation check (abelianized at dimension >= 2).
ValidationReport validate_functor(const OmegaFunctorData& f);

}  // namespace polyhom
