#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cofinal/error.hpp"

namespace cofinal {

/// Position of an object or morphism inside a category's tables. The tag
/// keeps object and morphism positions from being mixed up.
template <class Tag>
struct Id {
  std::int32_t value = -1;

  constexpr Id() = default;
  constexpr explicit Id(std::int32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::int32_t>(v)) {}

  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }
  constexpr bool valid() const { return value >= 0; }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using Obj = Id<struct ObjectTag>;
using Mor = Id<struct MorphismTag>;

/// Complete tables for a category before validation. Identities are listed
/// among the morphisms; `identity[a]` names the identity of object a.
struct CategoryTable {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::vector<Obj> src;
  std::vector<Obj> tgt;
  std::vector<Mor> identity;
};

/// A finite category stored as a total composition table.
///
/// Values are immutable and share their tables, so copies are cheap. Every
/// instance has passed the exhaustive checker (typing of composites, unit
/// laws, associativity over all composable triples).
class FinCategory {
 public:
  /// Composition callback used by `assemble`: returns g∘f, or an invalid Mor
  /// when no composite is known.
  using ComposeFn = std::function<Mor(Mor g, Mor f)>;

  FinCategory();

  static FinCategory assemble(CategoryTable table, const ComposeFn& compose);

  std::size_t object_count() const { return data_->objects.size(); }
  std::size_t morphism_count() const { return data_->morphisms.size(); }
  bool empty() const { return object_count() == 0; }

  const std::string& name(Obj a) const { return data_->objects[a.index()]; }
  const std::string& name(Mor m) const { return data_->morphisms[m.index()]; }

  Obj src(Mor m) const { return data_->src[m.index()]; }
  Obj tgt(Mor m) const { return data_->tgt[m.index()]; }
  Mor identity(Obj a) const { return data_->identity[a.index()]; }
  bool is_identity(Mor m) const { return identity(src(m)) == m; }

  std::optional<Obj> find_object(std::string_view id) const;
  std::optional<Mor> find_morphism(std::string_view id) const;
  /// Throws ErrorKind::UnknownObject.
  Obj object(std::string_view id) const;
  /// Throws ErrorKind::InvalidInput.
  Mor morphism(std::string_view id) const;

  std::span<const Mor> hom(Obj a, Obj b) const {
    return data_->hom[a.index() * object_count() + b.index()];
  }
  std::span<const Mor> out(Obj a) const { return data_->out[a.index()]; }
  std::span<const Mor> in(Obj a) const { return data_->in[a.index()]; }
  /// Index of m inside hom(src m, tgt m).
  std::size_t hom_position(Mor m) const { return data_->hom_position[m.index()]; }
  /// Index of m inside out(src m) and in(tgt m).
  std::size_t out_position(Mor m) const { return data_->out_position[m.index()]; }
  std::size_t in_position(Mor m) const { return data_->in_position[m.index()]; }

  /// g∘f. Throws ErrorKind::TypingMismatch when tgt(f) != src(g).
  Mor compose(Mor g, Mor f) const;
  /// Composite of a path listed in application order (first applied first).
  Mor compose_path(std::span<const Mor> path) const;

  bool same_tables(const FinCategory& other) const { return data_ == other.data_; }
  /// Structural equality: identical ids, typing, identities and composition.
  friend bool operator==(const FinCategory& a, const FinCategory& b);

 private:
  struct Data {
    std::vector<std::string> objects;
    std::vector<std::string> morphisms;
    std::vector<Obj> src;
    std::vector<Obj> tgt;
    std::vector<Mor> identity;
    std::vector<std::vector<Mor>> hom;
    std::vector<std::vector<Mor>> out;
    std::vector<std::vector<Mor>> in;
    std::vector<std::size_t> hom_position;
    std::vector<std::size_t> out_position;
    std::vector<std::size_t> in_position;
    // after[f][out_position[g]] == g∘f
    std::vector<std::vector<Mor>> after;
    std::map<std::string, Obj, std::less<>> object_index;
    std::map<std::string, Mor, std::less<>> morphism_index;
  };

  explicit FinCategory(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Raw description as found in category files: identities are implicit and
/// named `id_<object>`; composites are listed for non-identity pairs.
struct MorphismSpec {
  std::string id;
  std::string src;
  std::string tgt;
};

struct CategorySpec {
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  /// (g, f, g∘f)
  std::vector<std::array<std::string, 3>> composites;
};

std::string identity_name(std::string_view object);

FinCategory validate_category(const CategorySpec& spec);
CategorySpec describe(const FinCategory& c);

FinCategory opposite(const FinCategory& c);
FinCategory product(const FinCategory& c, const FinCategory& d);

/// Object (i, j) of product(c, d) sits at i * |obj d| + j; morphisms likewise.
inline Obj product_object(const FinCategory& d, Obj i, Obj j) {
  return Obj(i.index() * d.object_count() + j.index());
}
inline Mor product_morphism(const FinCategory& d, Mor f, Mor g) {
  return Mor(f.index() * d.morphism_count() + g.index());
}

/// Connected components of the underlying undirected graph. Returns the
/// component index of every object; components are numbered by first object.
std::vector<std::size_t> connected_components(const FinCategory& c, std::size_t* count = nullptr);

/// True when the only endomorphisms are identities and the object graph has
/// no directed cycle, i.e. the nondegenerate nerve is finite-dimensional.
bool is_loop_free(const FinCategory& c);

// ---------------------------------------------------------------------------
// Functors

class FinFunctor {
 public:
  FinFunctor() = default;

  const FinCategory& source() const { return source_; }
  const FinCategory& target() const { return target_; }

  Obj operator()(Obj a) const { return on_objects_[a.index()]; }
  Mor operator()(Mor m) const { return on_morphisms_[m.index()]; }

  const std::vector<Obj>& object_map() const { return on_objects_; }
  const std::vector<Mor>& morphism_map() const { return on_morphisms_; }

  /// Checks typing, identities and every composite exhaustively.
  static FinFunctor make(FinCategory source, FinCategory target, std::vector<Obj> on_objects,
                         std::vector<Mor> on_morphisms);

  friend bool operator==(const FinFunctor&, const FinFunctor&) = default;

 private:
  FinCategory source_;
  FinCategory target_;
  std::vector<Obj> on_objects_;
  std::vector<Mor> on_morphisms_;
};

struct FunctorSpec {
  std::map<std::string, std::string> on_objects;
  std::map<std::string, std::string> on_morphisms;
};

FinFunctor validate_functor(const FunctorSpec& spec, const FinCategory& source,
                            const FinCategory& target);
FunctorSpec describe(const FinFunctor& f);

FinFunctor identity_functor(const FinCategory& c);
FinFunctor opposite(const FinFunctor& f);
/// g∘f
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
/// pt → c picking a.
FinFunctor object_functor(const FinCategory& c, Obj a);
/// c → pt.
FinFunctor terminal_functor(const FinCategory& c);
/// Projections of product(c, d).
FinFunctor first_projection(const FinCategory& c, const FinCategory& d);
FinFunctor second_projection(const FinCategory& c, const FinCategory& d);

// ---------------------------------------------------------------------------
// Set-valued diagrams

/// A functor shape → FinSet. Elements of X(a) are indices into `labels(a)`.
class SetDiagram {
 public:
  SetDiagram() = default;

  /// `action[m][x]` is the image of element x of X(src m). Identities and
  /// functoriality are checked over every composable pair.
  static SetDiagram make(FinCategory shape, std::vector<std::vector<std::string>> labels,
                         std::vector<std::vector<std::size_t>> action);

  const FinCategory& shape() const { return shape_; }
  std::size_t size(Obj a) const { return labels_[a.index()].size(); }
  std::span<const std::string> labels(Obj a) const { return labels_[a.index()]; }
  const std::string& label(Obj a, std::size_t x) const { return labels_[a.index()][x]; }
  std::span<const std::size_t> action(Mor m) const { return action_[m.index()]; }
  std::size_t apply(Mor m, std::size_t x) const { return action_[m.index()][x]; }
  std::optional<std::size_t> find(Obj a, std::string_view label) const;

  friend bool operator==(const SetDiagram&, const SetDiagram&) = default;

 private:
  FinCategory shape_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<std::size_t>> action_;
};

struct DiagramSpec {
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, std::map<std::string, std::string>> functions;
};

SetDiagram validate_diagram(const DiagramSpec& spec, const FinCategory& shape);
DiagramSpec describe(const SetDiagram& x);

/// Constant diagram on the set `labels`.
SetDiagram constant_diagram(const FinCategory& shape, std::vector<std::string> labels);

// ---------------------------------------------------------------------------
// Quotients of finite sets

/// A finite set of generators modulo the equivalence relation generated by
/// witness pairs. Classes are ordered by their lexicographically smallest
/// generator label, which also serves as the class label.
class FinSetQuotient {
 public:
  FinSetQuotient() = default;
  FinSetQuotient(std::vector<std::string> generators,
                 std::vector<std::pair<std::size_t, std::size_t>> witnesses);

  std::size_t generator_count() const { return generators_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  const std::string& generator(std::size_t g) const { return generators_[g]; }
  std::size_t class_of(std::size_t g) const { return class_of_[g]; }
  const std::vector<std::size_t>& members(std::size_t cls) const { return classes_[cls]; }
  const std::string& class_label(std::size_t cls) const { return generators_[classes_[cls].front()]; }
  const std::vector<std::pair<std::size_t, std::size_t>>& witnesses() const { return witnesses_; }

 private:
  std::vector<std::string> generators_;
  std::vector<std::pair<std::size_t, std::size_t>> witnesses_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> classes_;
};

// ---------------------------------------------------------------------------
// Standard categories

/// A permutation of {0, ..., n-1} in one-line notation.
using Permutation = std::vector<std::size_t>;

/// Parses cycle notation on letters 1..n, e.g. "(1 2)(3 4)" or "(1 2 3)".
Permutation parse_cycles(std::string_view text, std::size_t n);
/// One-line notation with letters 1..n, e.g. "[2 1 3]".
std::string permutation_name(const Permutation& p);

enum class StandardKind { point, walking_arrow, discrete, chain_poset, span, cospan, group, fin_inj_leq };

struct StandardParams {
  std::size_t n = 0;
  std::vector<Permutation> generators;
  std::size_t max_group_order = 40320;
};

std::optional<StandardKind> parse_standard_kind(std::string_view name);
FinCategory build_standard(StandardKind kind, const StandardParams& params = {});

FinCategory point();
FinCategory walking_arrow();
FinCategory discrete(std::size_t n);
FinCategory chain_poset(std::size_t n);
/// Throws ErrorKind::GeneratorClosureTooLarge past `max_order` elements.
FinCategory permutation_group(std::size_t letters, const std::vector<Permutation>& generators,
                              std::size_t max_order = 40320);
/// The full symmetric group on n letters as a one-object category.
FinCategory symmetric_group(std::size_t n);
/// Skeleton of finite sets of size ≤ n with injections; object k is {1..k}.
FinCategory fin_inj_leq(std::size_t n);
/// The inclusion BΣ_n → fin_inj_leq(n) onto the object n.
FinFunctor fin_inj_inclusion(std::size_t n);

}  // namespace cofinal
