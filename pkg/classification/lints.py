"""Soft consistency rules over a classification.

Lints encode regularities that hold typically, but not necessarily; they
produce warnings and never make a classification invalid. A rule only fires
when every attribute it involves is set.
"""

from .constants import SEVERITY, WARNING
from .models import LintFinding


class LintRule:
    rule_id = ""
    name = ""
    attributes = ()
    message = ""
    severity = WARNING

    def applies(self, selections):
        raise NotImplementedError

    def check(self, selections):
        if not all(attribute in selections for attribute in self.attributes):
            return None
        if not self.applies(selections):
            return None
        return LintFinding(
            rule_id=self.rule_id,
            attributes_involved=frozenset(self.attributes),
            message=self.message,
            severity=self.severity,
        )


class LintRuleRegistry:
    def __init__(self):
        self._rules = {}

    def register(self, rule_class):
        """Register a LintRule subclass; usable as a class decorator."""
        if rule_class.rule_id in self._rules:
            raise ValueError(f"lint rule {rule_class.rule_id!r} is already registered")
        if rule_class.severity not in dict(SEVERITY):
            raise ValueError(
                f"lint rule {rule_class.rule_id!r} has unknown severity {rule_class.severity!r}"
            )
        self._rules[rule_class.rule_id] = rule_class()
        return rule_class

    def unregister(self, rule_id):
        del self._rules[rule_id]

    def __contains__(self, rule_id):
        return rule_id in self._rules

    def __iter__(self):
        return iter(self._rules.values())

    def __len__(self):
        return len(self._rules)

    def run(self, selections):
        findings = []
        for rule in self:
            finding = rule.check(selections)
            if finding is not None:
                findings.append(finding)
        return findings


lint_rules = LintRuleRegistry()


def _selects(selections, attribute_id, characteristic_id):
    return characteristic_id in selections[attribute_id]


@lint_rules.register
class PhysicalWithProbabilisticFinality(LintRule):
    rule_id = "L1"
    name = "physical-probabilistic-finality"
    attributes = ("technology", "consensus")
    message = "physical assets typically reach instant finality, not probabilistic finality"

    def applies(self, selections):
        return _selects(selections, "technology", "physical") and _selects(
            selections, "consensus", "probabilistic_finality"
        )


@lint_rules.register
class SingleIssuanceWithoutFixedSupply(LintRule):
    rule_id = "L2"
    name = "single-issuance-unfixed-supply"
    attributes = ("issuance", "total_supply")
    message = "an asset issued once typically has a fixed total supply"

    def applies(self, selections):
        return _selects(selections, "issuance", "once") and (
            selections["total_supply"].characteristic_ids != {"fixed"}
        )


@lint_rules.register
class LedgerWithInstantFinality(LintRule):
    rule_id = "L3"
    name = "ledger-instant-finality"
    attributes = ("technology", "consensus")
    message = "distributed ledger assets typically reach probabilistic finality"

    def applies(self, selections):
        return _selects(selections, "technology", "dlt") and _selects(
            selections, "consensus", "instant_finality"
        )


@lint_rules.register
class FlexibleSupplyWithoutMovement(LintRule):
    rule_id = "L4"
    name = "flexible-supply-static-units"
    attributes = ("redemption", "total_supply", "issuance")
    message = (
        "a flexible total supply is unreachable when units are issued once "
        "and never redeemed"
    )

    def applies(self, selections):
        return (
            _selects(selections, "redemption", "none")
            and _selects(selections, "total_supply", "flexible")
            and _selects(selections, "issuance", "once")
        )


def lint(taxonomy, classification, rules=None):
    """Apply the registered rules to the attributes ``classification`` sets.

    Attributes the taxonomy does not define are ignored.
    """
    rules = lint_rules if rules is None else rules
    selections = {
        attribute_id: selection
        for attribute_id, selection in classification.selections.items()
        if taxonomy.attribute(attribute_id) is not None and selection.characteristic_ids
    }
    return rules.run(selections)
