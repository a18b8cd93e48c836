"""
Driving the library from the command language
=============================================

The same computations are available as a small script language, run here
through ``run_script`` and equivalently through ``matlis run``.
"""

import json

from matlis.dsl import DSLError, run_script

SCRIPT = """
ring R = quotient(rationals, [x, y], ideal(x*y, y^2));
artinian E = dual(free(R, 1));
module k = cyclic(R, x, y);
compute tensor(E, E);
compute betti(k, 4);
compute bass(k);
compute att(E);
preset example-6-5-general(2,1,3);
"""

session = run_script(SCRIPT)
for out in session.outputs:
    res = out.get("result", out.get("lines"))
    print(out.get("statement", out.get("preset")), "->", json.dumps(res)[:100])

# Errors carry a stable code and a source position.
try:
    run_script("ring R = quotient([x]);\ncompute hom(M, M);")
except DSLError as exc:
    print(exc.to_json())

# From a shell:
#   echo 'ring R = quotient([x]); compute depth(free(R,1));' | matlis run --table
