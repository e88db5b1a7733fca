import pytest

from picomp.app.schemas import SchemaValidationError, validate_campaign_report


def _report_payload() -> dict:
    return {
        "seed": 7,
        "calculus": "adm-par",
        "usage_policy": "mixed",
        "corpus_size": 2,
        "max_size": 12,
        "status": "FAILED",
        "kinds": [
            {
                "kind": "Termination",
                "passed": 1,
                "total": 2,
                "not_applicable": 0,
                "max_depth_used": 3,
            }
        ],
        "counterexamples": [
            {
                "kind": "Termination",
                "item": 1,
                "seed": 99,
                "term": "let[inf] x_1 = * in x_1",
                "reason": "no normal form under Leftmost() within budget",
                "trace": [],
            }
        ],
    }


def test_validate_campaign_report_success():
    validate_campaign_report(_report_payload())


def test_validate_campaign_report_missing_required():
    with pytest.raises(SchemaValidationError):
        validate_campaign_report({})


def test_validate_campaign_report_rejects_unknown_kind():
    payload = _report_payload()
    payload["kinds"][0]["kind"] = "Confluence"
    with pytest.raises(SchemaValidationError) as excinfo:
        validate_campaign_report(payload)
    assert excinfo.value.schema_name == "campaign_report"
    assert excinfo.value.errors[0].startswith("kinds.0.kind:")


def test_validate_campaign_report_rejects_extra_fields():
    payload = _report_payload()
    payload["elapsed"] = 1.5
    with pytest.raises(SchemaValidationError):
        validate_campaign_report(payload)
