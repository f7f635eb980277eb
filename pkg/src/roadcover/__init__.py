"""Road coverage verification and approximate minimum sensor deployment."""

from .deploy import Deployment, deploy, deploy_arbitrary, deploy_side_boundary, four_sensor_pattern
from .geometry import Capsule, Cap, LineSegment, Point, RoadSegment, Sensor
from .instance import GenSpec, Instance, Region, generate_random, parse_instance, serialize_instance
from .verify import build_coverage_graph, verify_collaborative, verify_independent

__all__ = [
    "Cap", "Capsule", "Deployment", "GenSpec", "Instance", "LineSegment", "Point", "Region",
    "RoadSegment", "Sensor", "build_coverage_graph", "deploy", "deploy_arbitrary",
    "deploy_side_boundary", "four_sensor_pattern", "generate_random", "parse_instance",
    "serialize_instance", "verify_collaborative", "verify_independent",
]
