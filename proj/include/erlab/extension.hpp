#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "erlab/core.hpp"
#include "erlab/numeric.hpp"

namespace erlab {

/// Colour sets joining a new vertex to each of the r existing vertices.
struct Attachment {
  std::vector<ColourSet> profile;
  friend bool operator==(const Attachment&, const Attachment&) = default;
  friend auto operator<=>(const Attachment&, const Attachment&) = default;
};

/// Σ_i α_i log2|profile_i| over entries with at least one colour.
long double ext_value(const Weighting& weighting, const Attachment& a);
/// Exact ext; needs an exact weighting.
LogForm ext_form(const Weighting& weighting, const Attachment& a);

struct AttachmentOptions {
  // Bound each undecided vertex by the colours still individually addable
  // instead of log2 s.
  bool tight_bound = true;
};

struct AttachmentScan {
  std::vector<Attachment> attachments;  // sorted
  std::uint64_t nodes = 0;
};

/// Every level-0 feasible attachment whose ext equals Q. Throws
/// NotBasicOptimal unless the triple is level-2 feasible, positive,
/// stationary and has q equal to Q.
AttachmentScan scan_optimal_attachments(const FeasibleTriple& triple, const ColourSeq& k, const QBreakdown& Q,
                                        const AttachmentOptions& options = {});
std::vector<Attachment> enumerate_optimal_attachments(const FeasibleTriple& triple, const ColourSeq& k,
                                                      const QBreakdown& Q);

/// Largest ext over feasible attachments that clone no vertex (nullopt when
/// every feasible attachment is a clone).
std::optional<long double> best_nonclone_ext(const FeasibleTriple& triple, const ColourSeq& k);

struct ClonedAttachment {
  int member = 0;
  Attachment attachment;
  int target = 0;  // clone index, strong clone preferred
  CloneStatus status = CloneStatus::NotClone;
};

struct MemberVerdict {
  int member = 0;
  std::size_t attachments = 0;
  std::uint64_t nodes = 0;
  bool holds = true;
  bool strong = true;
  std::optional<long double> nonclone_gap;  // Q minus the best non-clone ext
};

struct ExtensionOptions {
  bool opt_set_exhaustive = false;
  std::string provenance;
  bool measure_gap = false;
  AttachmentOptions attachment;
};

struct ExtensionVerdict {
  bool holds = true;
  bool strong_holds = true;
  std::vector<std::pair<int, Attachment>> witnesses;  // (member, non-clone optimal attachment)
  std::vector<ClonedAttachment> clone_targets;
  std::vector<MemberVerdict> members;
  QBreakdown Q;
  bool opt_set_exhaustive = false;
  std::string provenance;
};

/// Throws EmptyOptSet for an empty set and NotBasicOptimal when a member
/// fails verification or the members disagree on q.
ExtensionVerdict check_extension_property(const std::vector<FeasibleTriple>& opt_set, const ColourSeq& k,
                                          const ExtensionOptions& options = {});

struct NumcheckResult {
  bool holds = false;
  BigInt target;                               // 2^{Q r}
  std::vector<std::vector<int>> solutions;     // non-decreasing multisets from [s]
};

/// Integer product test on a uniform Turán-type optimum. Throws NotApplicable
/// when the hypotheses fail.
NumcheckResult numcheck_certificate(const FeasibleTriple& triple, const ColourSeq& k);

struct CharDecomposition {
  bool found = false;
  std::vector<std::vector<int>> parts;  // parts[j] = vertices merged into optimum vertex j
  std::vector<int> clique_orders;       // colour-1 clique number inside each part
  std::string failed;                   // "feasibility", "q", "partition", "i", "ii" or "iii"
  std::string reason;
};

CharDecomposition char_decompose(const FeasibleTriple& triple, const FeasibleTriple& opt_star, const ColourSeq& k);

}  // namespace erlab
