from .decoder import Decoder, decode_edge, decode_feature
from .encoder import EmbeddingStack, Encoder, encode
from .layers import gat_head, gat_layer, gcn_layer, sage_layer
from .params import ParamStore, glorot_uniform
from .schemas import DecoderConfig, EncoderConfig

__all__ = [
    "Decoder", "DecoderConfig", "EmbeddingStack", "Encoder", "EncoderConfig", "ParamStore",
    "decode_edge", "decode_feature", "encode", "gat_head", "gat_layer", "gcn_layer",
    "glorot_uniform", "sage_layer",
]
