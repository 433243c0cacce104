"""End-to-end smoke of the python extension against known small cases."""

import oblim


def test_lambda_base_case():
    dims = oblim.lambda_dims("Sym(3)", "natural(2)", p=2, max_i=2, backend="both")
    assert dims == [0, 1, 0]


def test_lambda_semidirect_spelling():
    dims = oblim.lambda_dims("semidirect(natural(2),Sym(3))", max_i=2)
    assert dims == [0, 1, 0]


def test_group_order():
    assert oblim.group_order("Sym(4)") == 24
    assert oblim.group_order("semidirect(natural(2),Sym(3))") == 24
    assert oblim.group_order("wreath(Sym(3),2)") == 72


def test_fusion_report():
    r = oblim.fusion_report("semidirect(natural(2),Sym(3))", p=2)
    assert r["prime"] == 2
    assert r["lambda_dims"] == [0, 1, 0, 0]
    assert r["x_classes"] == 1
    assert r["y_classes"] == 1
    reps = [row["rep"] for row in r["per_class_table"]]
    assert reps == ["X[0]", "X[1]"]
    orders = [row["order"] for row in r["per_class_table"]]
    assert orders == [4, 8]
    assert "exactly one" in r["note"]


def test_parse_errors_are_value_errors():
    for bad in ["", "Sym(", "Frob(20)", "prod(Sym(3))"]:
        try:
            oblim.group_order(bad)
        except ValueError:
            continue
        raise AssertionError(f"{bad!r} should not parse")


def test_budget_refusal():
    try:
        oblim.lambda_dims("Sym(3)", "natural(2)", max_i=2, backend="bar", budget_chains=1)
    except RuntimeError as e:
        assert "budget" in str(e)
    else:
        raise AssertionError("a one-chain budget should be refused")


def main():
    cases = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for case in cases:
        case()
        print(f"{case.__name__}: ok")
    print(f"{len(cases)} smoke tests passed")


if __name__ == "__main__":
    main()
