from app.suites import commutative, dims, miki, structure, subalgebras, theorem1, theorem2
from app.suites.commutative import verify_commutative
from app.suites.dims import verify_dims
from app.suites.miki import verify_miki
from app.suites.structure import verify_structure
from app.suites.subalgebras import verify_subalgebras
from app.suites.theorem1 import verify_theorem1
from app.suites.theorem2 import verify_theorem2

SUITES = {
    module.suite.name: module.suite
    for module in (theorem1, theorem2, structure, miki, subalgebras, commutative, dims)
}
