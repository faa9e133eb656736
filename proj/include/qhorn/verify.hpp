#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhorn/oracle.hpp"

namespace qhorn {

enum class ItemKind { A1, N1, A2, N2, A3, A4 };

const char* item_kind_name(ItemKind k);

struct VerificationItem {
  ItemKind kind = ItemKind::A1;
  QuestionObject question{1};
  Label expected = Label::Answer;
  /// Expression or tuple the item was built from, in shorthand.
  std::string provenance;
};

/// How A3 roots fill the non-head variables outside the dominating
/// conjunction. OutsideFalse keeps each root inside the conjunction's
/// sub-lattice; OutsideTrue is the alternative reading of the printed
/// example and can contradict the query's own universals.
enum class A3Fill { OutsideFalse, OutsideTrue };

struct VerificationOptions {
  A3Fill a3_fill = A3Fill::OutsideFalse;
};

/// Items in the order A1, N1*, A2*, N2*, A3*, A4. Throws Error unless the
/// query is role-preserving. A query without expressions gets A1 = {0^n}.
std::vector<VerificationItem> build_verification_set(const QhornQuery& q, VerificationOptions options = {});

std::size_t verification_set_size(const QhornQuery& q);

/// 2 + k_e + 3 k_u over the dominant existential tuples and dominant
/// universals of q.
std::size_t verification_size_bound(const QhornQuery& q);

struct ItemOutcome {
  VerificationItem item;
  Label observed = Label::Answer;
  bool agree = true;
};

struct VerificationReport {
  std::vector<ItemOutcome> outcomes;
  bool verified = true;
  std::optional<std::size_t> first_disagreement;
  /// Discrepancy class implied by the first disagreeing item's kind.
  std::string discrepancy;
};

/// Which kind of difference a disagreeing item of this kind points at.
const char* discrepancy_class(ItemKind k);

VerificationReport run_verification(MembershipOracle& oracle, const std::vector<VerificationItem>& items);

json verification_item_to_json(const VerificationItem& item);
json verification_report_to_json(const VerificationReport& report);

}  // namespace qhorn
