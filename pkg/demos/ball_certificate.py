"""Certify the standard ball Higgs data over n-balls, then break it on purpose.

Run:  python demos/ball_certificate.py
"""

from fractions import Fraction

from kuga_cert import certify
from kuga_cert.higgs_model import HiggsData, HodgePiece, arakelov_defect
from kuga_cert.rep_catalog import ball_profile, standard_ball_higgs

for n in range(1, 6):
    profile = ball_profile(n)
    v = standard_ball_higgs(n)
    cert = certify(profile, [v])
    print(f"n={n}: hodge {v.hodge_numbers}, defect {arakelov_defect(profile, v)}, "
          f"certificate {'PASS' if cert.passed else 'FAIL'}")

# shrink the degree gap: the Arakelov inequality becomes strict
profile = ball_profile(3)
weak = HiggsData(
    HodgePiece(3, (Fraction(1, 8),)),
    HodgePiece(1, (Fraction(-1, 8),)),
    support=(1,),
    observed_length=1,
)
cert = certify(profile, [weak])
print(f"\nweakened n=3 summand: defect {arakelov_defect(profile, weak)}, "
      f"condition 1 {'pass' if cert.condition1 else 'FAIL'}")
