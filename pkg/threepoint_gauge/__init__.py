from threepoint_gauge.harness import VerificationClient
from threepoint_gauge.ring import RElem, parse_relem
from threepoint_gauge.kahler import OmegaClass, mu, reduce
from threepoint_gauge.verify.schema import SuiteConfig
