"""Reference architectures and their published ImageNet results."""
from archmetrics.zoo.builders import (  # noqa: F401
    MODELS,
    build_autoencoder,
    build_mlp,
    build_plainnet,
    build_resnet,
    build_vgg,
    model_names,
    normalize_name,
    resolve_model,
)
from archmetrics.zoo.manifest import (  # noqa: F401
    ModelRecord,
    built_family_subset,
    load_manifest,
    zoo_key,
)
