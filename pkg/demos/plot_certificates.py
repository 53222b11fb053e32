"""
Certificates for the inequality
===============================

A certificate checks the set's hypotheses and every pair in a finite base
window. The injection then carries the inequality to all w, z >= L.
"""

import json

from apartitions.bo import certify_bo
from apartitions.core import PartSet

for ps in [PartSet.power(3), PartSet.power(2), PartSet.fibonacci(), PartSet.factorial(), PartSet.all_integers()]:
    cert = certify_bo(ps)
    lo, hi = cert.scheme.window
    status = cert.conclusion if cert.valid else "; ".join(cert.failures)
    print(f"{ps.spec:>10}  window [{lo},{hi}]  variant {cert.scheme.variant}  ->  {status}")
    for note in cert.caveats:
        print(f"{'':>12}caveat: {note}")

# Certificates serialize for archiving.
print(json.dumps(certify_bo(PartSet.power(3)).to_dict()["scheme"], indent=2))
