import pytest

from nilcomm import (
    HarnessOptions,
    InvalidParameterError,
    check_commutative_ring_prop,
    check_example_matrix,
    check_example_tn,
    check_example_tn_field,
    check_example_vn,
    check_example_zpn,
    check_hom_transfer,
    check_lemma_matrix_nil,
    check_lemma_squarefree,
    check_t_submodule,
    check_tor_t_sets,
    check_torsion_free_props,
    exit_code,
    make_matrix_ring,
    make_product_ring,
    make_ring_hom,
    make_zn,
    MatrixShape,
    registered_ids,
    regular_module,
    reverify_refutation,
    run_all,
    run_check,
)
from nilcomm.config import DEFAULT_CONFIG

# the fixed inventory of registered claim checks
EXPECTED_CHECK_IDS = [
    "lemma_squarefree",
    "matrix_nil_coverage",
    "zpn_hierarchy",
    "matrix_semicommutativity",
    "tn_zpn_not_nil_semicommutative",
    "tn_field_not_nil_semicommutative",
    "vn_not_nil_semicommutative",
    "torsion_free_collapse",
    "criterion_equivalence",
    "submodule_equivalence",
    "commutative_nilpotency_transfer",
    "hom_transfer",
    "torsion_vs_regular_torsion",
    "t_set_submodule",
    "localization_wellformed",
    "localization_transfer",
    "nil_module_properties",
    "submodules_inherit",
    "quotient_by_torsion",
    "theta_iso",
]

EXPECTED_STATUSES = {
    "lemma_squarefree": "confirmed",
    "matrix_nil_coverage": "confirmed",
    "zpn_hierarchy": "confirmed",
    "matrix_semicommutativity": "confirmed",
    "tn_zpn_not_nil_semicommutative": "confirmed",
    "tn_field_not_nil_semicommutative": "confirmed",
    "vn_not_nil_semicommutative": "confirmed",
    "torsion_free_collapse": "confirmed",
    "criterion_equivalence": "confirmed",
    "submodule_equivalence": "confirmed",
    "commutative_nilpotency_transfer": "confirmed",
    "hom_transfer": "confirmed",
    "torsion_vs_regular_torsion": "confirmed",
    "t_set_submodule": "confirmed",
    "localization_wellformed": "confirmed",
    # the zero-divisor multiplicative set breaks the transfer biconditional
    "localization_transfer": "refuted",
    # the full 2x2 matrix module is nil yet not semicommutative
    "nil_module_properties": "refuted",
    "submodules_inherit": "confirmed",
    "quotient_by_torsion": "confirmed",
    "theta_iso": "confirmed",
}


@pytest.fixture(scope="module")
def suite_reports():
    return run_all(options=HarnessOptions(nmax=400, samples=300))


def test_registry_covers_claim_inventory():
    assert registered_ids() == EXPECTED_CHECK_IDS
    assert len(registered_ids()) >= 14


def test_suite_statuses(suite_reports):
    assert len(suite_reports) == len(EXPECTED_CHECK_IDS)
    for report in suite_reports:
        assert report.status == EXPECTED_STATUSES[report.check_id], report.check_id
        assert report.detail.get("reason") != "internal-error"


def test_refuted_reports_carry_replayable_witnesses(suite_reports):
    refuted = [r for r in suite_reports if r.status == "refuted"]
    assert len(refuted) == 2
    for report in refuted:
        assert "witness" in report.detail
        assert reverify_refutation(report)


def test_exit_codes(suite_reports):
    assert exit_code(suite_reports) == 2
    confirmed_only = [r for r in suite_reports if r.status == "confirmed"]
    assert exit_code(confirmed_only) == 0


def test_suite_is_deterministic():
    opts = HarnessOptions(nmax=60, samples=50)
    only = ["lemma_squarefree", "zpn_hierarchy", "localization_transfer",
            "theta_iso"]
    first = [r.to_json_dict() for r in run_all(options=opts, only=only)]
    second = [r.to_json_dict() for r in run_all(options=opts, only=only)]
    assert first == second


def test_run_all_selection():
    reports = run_all(only=["lemma_squarefree"],
                      options=HarnessOptions(nmax=50))
    assert len(reports) == 1
    assert reports[0].check_id == "lemma_squarefree"
    with pytest.raises(InvalidParameterError):
        run_all(only=["no_such_check"])
    with pytest.raises(InvalidParameterError):
        run_check("no_such_check")


def test_lemma_squarefree_small():
    report = check_lemma_squarefree(100)
    assert report.status == "confirmed"
    assert report.detail["checked"] == 99
    assert report.detail["mismatches"] == []


def test_matrix_nil_modes(m4z2_module):
    full = check_lemma_matrix_nil(2, make_zn(2), regular_module(make_zn(2)))
    assert full.status == "confirmed"
    assert full.detail["mode"] == "full"
    assert full.detail["nil_size"] == 16

    sampled = check_lemma_matrix_nil(4, make_zn(2), regular_module(make_zn(2)),
                                     sample=250)
    assert sampled.status == "confirmed"
    assert sampled.detail["mode"] == "sampled-witness"
    assert sampled.detail["passes"] == 250


def test_zpn_instances():
    for p, n in ((2, 2), (3, 2), (2, 3), (5, 2)):
        report = check_example_zpn(p, n)
        assert report.status == "confirmed", (p, n)
        assert report.detail["pinned_triple"]["verified"]
    with pytest.raises(InvalidParameterError):
        check_example_zpn(3, 1)


def test_matrix_example_n2_and_n4():
    small = check_example_matrix(2, 2)
    assert small.status == "confirmed"
    assert small.detail["full"]["nil_semicommutative"]["holds"] is True
    assert small.detail["full"]["semicommutative_observed"]["holds"] is False

    big = check_example_matrix(4, 2, sample=200)
    assert big.status == "confirmed"
    replay = big.detail["replay"]
    assert replay["ak_is_zero"] and replay["alk_matches"]
    assert replay["alk_single_entry_at"] == [1, 4]


def test_counterexample_checks():
    for fn in (check_example_tn, check_example_tn_field, check_example_vn):
        report = fn(2, 2)
        assert report.status == "confirmed", fn.__name__
        assert report.detail["full_verdict"]["holds"] is False
        assert report.detail["replay_witness"]["verified"]
        assert report.detail["nil_certificate"]["verified"]


def test_torsion_free_props_skip_and_confirm():
    confirmed = check_torsion_free_props(regular_module(make_zn(5)))
    assert confirmed.status == "confirmed"
    skipped = check_torsion_free_props(regular_module(make_zn(4)))
    assert skipped.status == "skipped"
    assert "torsion-free" in skipped.detail["reason"]


def test_commutative_ring_prop_shapes():
    confirmed = check_commutative_ring_prop(make_zn(6))
    assert confirmed.status == "confirmed"
    assert confirmed.detail["hypothesis"] is True

    z8 = check_commutative_ring_prop(make_zn(8))
    assert z8.status == "skipped"
    assert z8.detail["hypothesis"] is False
    assert z8.detail["implication_ok"] is False  # recorded even when skipped

    z4 = check_commutative_ring_prop(make_zn(4))
    assert z4.status == "skipped"
    assert z4.detail["hypothesis"] is False

    with pytest.raises(InvalidParameterError):
        check_commutative_ring_prop(
            make_matrix_ring(MatrixShape("full", 2), make_zn(2)))


def test_hom_transfer_shapes():
    from nilcomm import zn_reduction_hom, identity_hom

    both_fail = check_hom_transfer(zn_reduction_hom(8, 4),
                                   regular_module(make_zn(4)))
    assert both_fail.status == "confirmed"
    assert both_fail.detail["target_verdict"]["holds"] is False
    assert both_fail.detail["source_verdict"]["holds"] is False

    ident = check_hom_transfer(identity_hom(make_zn(3)),
                               regular_module(make_zn(3)))
    assert ident.status == "confirmed"

    z2 = make_zn(2)
    pair = make_product_ring([make_zn(2), make_zn(2)])
    diag = make_ring_hom(z2, pair, lambda a: a * 2 + a)
    skipped = check_hom_transfer(diag, regular_module(pair))
    assert skipped.status == "skipped"


def test_tor_t_and_t_submodule_checks():
    assert check_tor_t_sets().status == "confirmed"
    assert check_t_submodule(regular_module(make_zn(3))).status == "confirmed"
    not_domain = check_t_submodule(regular_module(make_zn(6)))
    assert not_domain.status == "skipped"


def test_internal_error_becomes_skipped_report(monkeypatch):
    import nilcomm.harness as harness

    def boom(cfg, opts):
        raise RuntimeError("synthetic failure")

    monkeypatch.setitem(harness._REGISTRY, "theta_iso",
                        harness._CheckDef("theta_iso",
                                          harness._REGISTRY["theta_iso"].claim,
                                          boom))
    report = run_check("theta_iso")
    assert report.status == "skipped"
    assert report.detail["reason"] == "internal-error"
    assert exit_code([report]) == 1


def test_runtime_is_measured_but_suppressed_in_serialization(suite_reports):
    some = suite_reports[0]
    assert some.runtime_ms >= 0
    assert some.to_json_dict()["runtime_ms"] == 0
    assert some.to_json_dict(timing=True)["runtime_ms"] == some.runtime_ms


def test_zero_cap_skips_full_scans_but_keeps_witness_checks():
    cfg = DEFAULT_CONFIG.with_overrides(decision_cap=0)
    opts = HarnessOptions(nmax=40, samples=40)
    skipped = run_all(cfg, opts, only=["zpn_hierarchy", "theta_iso"])
    assert all(r.status == "skipped" for r in skipped)
    assert all(r.detail["reason"].startswith("cap") for r in skipped)
    witness_mode = run_all(cfg, opts, only=["matrix_nil_coverage",
                                            "lemma_squarefree"])
    by_id = {r.check_id: r for r in witness_mode}
    assert by_id["lemma_squarefree"].status == "confirmed"
    nil_cov = by_id["matrix_nil_coverage"]
    assert nil_cov.status == "confirmed"
    modes = [inst["detail"]["mode"]
             for inst in nil_cov.detail["instances"]]
    assert set(modes) == {"sampled-witness"}


def test_localization_wellformed_serializes_class_tables(suite_reports):
    report = next(r for r in suite_reports
                  if r.check_id == "localization_wellformed")
    table = report.detail["ring"]["class_table"]
    assert table == [[0, 1], [1, 1], [2, 1]]
