"""Documented CLI invocations, run from docs/examples.  Shared by the golden tests and the README."""

CASES = {
    "spec_z6_dot": "spec --algebra z6.json --topology zar --out dot",
    "spec_z6_doc": "spec --algebra z6.json --topology zar",
    "spec_f1xy_dot": "spec --algebra f1xy.json --out dot",
    "cover_z6_zar": "cover-check --algebra z6.json --elements 2,3 --topology zar",
    "cover_f1xy_zar": "cover-check --algebra f1xy.json --elements x,y --topology zar",
    "cover_pair_tot": "cover-check --algebra pair.json --elements a,b --topology tot",
    "cover_pair_zar": "cover-check --algebra pair.json --elements a,b --topology zar",
    "descent_z6": "descent --algebra z6.json --elements 2,3",
    "descent_trunc3": "descent --algebra trunc3.json --elements x",
    "glue_p1_doc": "glue --left f1x.json --right f1y.json --left-open x --right-open y --matrix=-1 "
                   "--left-name U0 --right-name U1",
    "glue_p1_dot": "glue --left f1x.json --right f1y.json --left-open x --right-open y --matrix=-1 "
                   "--left-name U0 --right-name U1 --out dot",
    "gamma_p1": "gamma --left f1x.json --right f1y.json --left-open x --right-open y --matrix=-1",
    "gamma_z6": "gamma --algebra z6.json",
    "affine_p1": "affine --left f1x.json --right f1y.json --left-open x --right-open y --matrix=-1",
    "affine_lattices": "affine --left diamond.json --right chain3.json --left-open a --right-open m",
    "affine_z4": "affine --algebra z4.json",
    "duality_diamond": "duality --lattice diamond.json",
    "duality_diamond_dot": "duality --lattice diamond.json --out dot",
    "duality_sweep": "duality --max-size 8",
    "vanish_z6_mod2": "vanish --module z6_mod2.json",
    "vanish_z6_zero": "vanish --module z6_zero.json",
    "vanish_trunc3": "vanish --module trunc3_quot.json",
    "sweep_monoids_tot": "sweep --catalog monoids --topology tot",
    "sweep_small_rings_zar": "sweep --catalog small-rings --topology zar",
    "axioms_small_rings": "axioms --catalog small-rings --topology zar",
    "error_missing_file": "spec --algebra missing.json",
    "error_bad_element": "cover-check --algebra z6.json --elements 7",
    "guard_f1xy": "spec --algebra f1xy.json --budget 3",
}
