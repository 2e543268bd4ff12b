"""One representative invocation per CLI subcommand."""
import json

TAU1 = json.dumps({"p": 3, "coalgebra": "full", "comodule": "trivial", "s": 1,
                   "terms": [{"coeff": 1, "bar": [{"xi": [], "tau": [1]}], "m": []}]})

CASES = {
    "adem": ["adem", "--prime", "2", "--word", "Sq2 Sq2"],
    "basis": ["basis", "--prime", "3", "--degree", "20"],
    "milnor-basis": ["milnor-basis", "--prime", "3", "--degree", "21", "--ambient", "full"],
    "coproduct": ["coproduct", "--prime", "3", "--tau", "2"],
    "antipode": ["antipode", "--prime", "3", "--xi", "3"],
    "xibar": ["xibar", "--prime", "3", "--k", "-1", "--degree", "16"],
    "coaction": ["coaction", "--prime", "3", "--gen", "8", "--power", "2"],
    "primitives": ["primitives", "--prime", "3", "--degree", "20"],
    "split-g": ["split-g", "--prime", "3", "--gen", "8"],
    "verify-g": ["verify-g", "--prime", "3", "--tmax", "24"],
    "include-mu": ["include-mu", "--prime", "3", "--gen", "9"],
    "member-msu": ["member-msu", "--prime", "3", "--gen", "1", "--power", "3"],
    "cobar-d": ["cobar-d", "--prime", "3", "--element", TAU1],
    "class-q": ["class-q", "--prime", "3", "--t", "2"],
    "cotor": ["cotor", "--prime", "3", "--coalgebra", "a-mod-a-prime", "--smax", "3", "--tmax", "18"],
    "change-of-rings": ["change-of-rings", "--prime", "3", "--smax", "2", "--tmax", "14"],
    "e2": ["e2", "--prime", "3", "--smax", "2", "--tmax", "14", "--direct"],
    "odd-vanishing": ["odd-vanishing", "--prime", "5", "--smax", "4", "--tmax", "40"],
    "pi-rank": ["pi-rank", "--n", "8"],
    "lambda": ["lambda", "--n", "26"],
    "sn-report": ["sn-report", "--n", "9"],
    "q-image": ["q-image", "--prime", "3", "--t", "2"],
}
