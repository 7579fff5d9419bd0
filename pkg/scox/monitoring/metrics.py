"""
Prometheus Metrics for scox

Counts relation applications, rewrite runs, enumerations and cache use,
and times the expensive operations.
"""
from prometheus_client import Counter, Histogram, Gauge, Info
import time
from functools import wraps
import logging

logger = logging.getLogger(__name__)

# ============================================================================
# HTTP METRICS
# ============================================================================

api_requests_total = Counter(
    'scox_api_requests_total',
    'Total API requests handled',
    ['endpoint', 'status_code']
)

# ============================================================================
# RELATION CALCULUS METRICS
# ============================================================================

relations_applied_total = Counter(
    'scox_relations_applied_total',
    'Relation instances applied to expressions',
    ['kind']  # StarQuadratic, UpUp, DownDown, Switchback
)

rotation_cache_total = Counter(
    'scox_rotation_cache_total',
    'Rotation sequence cache lookups',
    ['result']  # hit, miss
)

rewrite_runs_total = Counter(
    'scox_rewrite_runs_total',
    'Normalizer invocations',
    ['outcome']  # already_reduced, rewritten
)

# ============================================================================
# ENUMERATION METRICS
# ============================================================================

enumerations_total = Counter(
    'scox_enumerations_total',
    'Exhaustive enumerations started',
    ['kind']  # rex_set, complex, web_classes, matsumoto
)

rex_set_size = Histogram(
    'scox_rex_set_size',
    'Number of reduced expressions found per coset',
    buckets=(1, 2, 5, 10, 50, 100, 1000, 10000, 100000)
)

operation_duration_seconds = Histogram(
    'scox_operation_duration_seconds',
    'Duration of expensive operations',
    ['operation'],
    buckets=(0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0)
)

systems_built = Gauge(
    'scox_systems_built',
    'Coxeter systems constructed in this process'
)

# Application info
app_info = Info(
    'scox_app',
    'scox application information'
)

# ============================================================================
# HELPER FUNCTIONS
# ============================================================================

def track_api_request(endpoint: str, status_code: int):
    """Track an API request"""
    api_requests_total.labels(endpoint=endpoint, status_code=status_code).inc()


def track_relation_applied(kind: str):
    """Track one relation application"""
    relations_applied_total.labels(kind=kind).inc()


def track_rotation_cache(hit: bool):
    """Track a rotation cache lookup"""
    rotation_cache_total.labels(result="hit" if hit else "miss").inc()


def track_rewrite(rewritten: bool):
    """Track a normalizer run"""
    rewrite_runs_total.labels(outcome="rewritten" if rewritten else "already_reduced").inc()


def track_enumeration(kind: str):
    """Track the start of an exhaustive enumeration"""
    enumerations_total.labels(kind=kind).inc()


def track_rex_set(size: int):
    """Track the size of a computed rex set"""
    rex_set_size.observe(size)


def track_system_built():
    """Track construction of a Coxeter system"""
    systems_built.inc()


def time_operation(label_value: str, metric_histogram=operation_duration_seconds):
    """
    Decorator to time function execution

    Usage:
        @time_operation("regenerate_table")
        def regenerate_table(...):
            ...
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                metric_histogram.labels(label_value).observe(time.perf_counter() - start_time)
        return wrapper
    return decorator


def init_metrics(version: str, environment: str):
    """Initialize metrics with app info"""
    app_info.info({
        'version': version,
        'environment': environment,
        'app_name': 'scox'
    })
    logger.info(f"Metrics initialized: version={version}, environment={environment}")
