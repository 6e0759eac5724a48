#!/usr/bin/env python3
"""Generate the neural-network workload descriptors shipped in workloads/.

Layer shapes are transcribed from the canonical published architecture
definitions (AlexNet, MobileNet v1, GoogLeNet/Inception-v1, ResNet-18,
Tiny YOLOv2, and a VGG-16 backbone with an RPN head for Faster R-CNN).
Each layer contributes:

    weight_bits = weight_parameter_count * precision
    output_bits = output_activation_count * precision

Weight counts are kernel weights only (no biases / batch-norm scales);
output spatial sizes are written explicitly next to each layer rather than
derived from padding arithmetic, so the tables can be checked against the
architecture papers line by line. Default precision is 8-bit for both
weights and activations.

Usage: python scripts/gen_workloads.py [--out workloads] [--precision 8]
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path


def conv(name: str, out_hw: int, k: int, c_in: int, c_out: int) -> dict:
    """Standard convolution: k x k x c_in x c_out kernel, out_hw x out_hw map."""
    return {"name": name, "weights": k * k * c_in * c_out,
            "outputs": out_hw * out_hw * c_out}


def dwconv(name: str, out_hw: int, k: int, c: int) -> dict:
    """Depthwise convolution: one k x k kernel per channel."""
    return {"name": name, "weights": k * k * c, "outputs": out_hw * out_hw * c}


def fc(name: str, c_in: int, c_out: int) -> dict:
    return {"name": name, "weights": c_in * c_out, "outputs": c_out}


def inception(prefix: str, out_hw: int, c_in: int, c1: int, r3: int, c3: int,
              r5: int, c5: int, pp: int) -> list[dict]:
    """The six convolutions of one GoogLeNet inception module."""
    return [
        conv(f"{prefix}_1x1", out_hw, 1, c_in, c1),
        conv(f"{prefix}_3x3_reduce", out_hw, 1, c_in, r3),
        conv(f"{prefix}_3x3", out_hw, 3, r3, c3),
        conv(f"{prefix}_5x5_reduce", out_hw, 1, c_in, r5),
        conv(f"{prefix}_5x5", out_hw, 5, r5, c5),
        conv(f"{prefix}_pool_proj", out_hw, 1, c_in, pp),
    ]


def basic_block(prefix: str, out_hw: int, c_in: int, c_out: int,
                downsample: bool) -> list[dict]:
    """ResNet basic block: two 3x3 convs, plus a 1x1 shortcut when strided."""
    layers = [
        conv(f"{prefix}_conv1", out_hw, 3, c_in, c_out),
        conv(f"{prefix}_conv2", out_hw, 3, c_out, c_out),
    ]
    if downsample:
        layers.append(conv(f"{prefix}_downsample", out_hw, 1, c_in, c_out))
    return layers


def alexnet() -> list[dict]:
    return [
        conv("conv1", 55, 11, 3, 96),
        conv("conv2", 27, 5, 96, 256),
        conv("conv3", 13, 3, 256, 384),
        conv("conv4", 13, 3, 384, 384),
        conv("conv5", 13, 3, 384, 256),
        fc("fc6", 6 * 6 * 256, 4096),
        fc("fc7", 4096, 4096),
        fc("fc8", 4096, 1000),
    ]


def mobilenet() -> list[dict]:
    layers = [conv("conv1", 112, 3, 3, 32),
              dwconv("conv2_dw", 112, 3, 32), conv("conv2_pw", 112, 1, 32, 64),
              dwconv("conv3_dw", 56, 3, 64), conv("conv3_pw", 56, 1, 64, 128),
              dwconv("conv4_dw", 56, 3, 128), conv("conv4_pw", 56, 1, 128, 128),
              dwconv("conv5_dw", 28, 3, 128), conv("conv5_pw", 28, 1, 128, 256),
              dwconv("conv6_dw", 28, 3, 256), conv("conv6_pw", 28, 1, 256, 256),
              dwconv("conv7_dw", 14, 3, 256), conv("conv7_pw", 14, 1, 256, 512)]
    for i in range(8, 13):
        layers += [dwconv(f"conv{i}_dw", 14, 3, 512), conv(f"conv{i}_pw", 14, 1, 512, 512)]
    layers += [dwconv("conv13_dw", 7, 3, 512), conv("conv13_pw", 7, 1, 512, 1024),
               dwconv("conv14_dw", 7, 3, 1024), conv("conv14_pw", 7, 1, 1024, 1024),
               fc("fc", 1024, 1000)]
    return layers


def googlenet() -> list[dict]:
    layers = [
        conv("conv1", 112, 7, 3, 64),
        conv("conv2_reduce", 56, 1, 64, 64),
        conv("conv2", 56, 3, 64, 192),
    ]
    layers += inception("inception_3a", 28, 192, 64, 96, 128, 16, 32, 32)
    layers += inception("inception_3b", 28, 256, 128, 128, 192, 32, 96, 64)
    layers += inception("inception_4a", 14, 480, 192, 96, 208, 16, 48, 64)
    layers += inception("inception_4b", 14, 512, 160, 112, 224, 24, 64, 64)
    layers += inception("inception_4c", 14, 512, 128, 128, 256, 24, 64, 64)
    layers += inception("inception_4d", 14, 512, 112, 144, 288, 32, 64, 64)
    layers += inception("inception_4e", 14, 528, 256, 160, 320, 32, 128, 128)
    layers += inception("inception_5a", 7, 832, 256, 160, 320, 32, 128, 128)
    layers += inception("inception_5b", 7, 832, 384, 192, 384, 48, 128, 128)
    layers.append(fc("fc", 1024, 1000))
    return layers


def resnet18() -> list[dict]:
    layers = [conv("conv1", 112, 7, 3, 64)]
    layers += basic_block("layer1_block1", 56, 64, 64, downsample=False)
    layers += basic_block("layer1_block2", 56, 64, 64, downsample=False)
    layers += basic_block("layer2_block1", 28, 64, 128, downsample=True)
    layers += basic_block("layer2_block2", 28, 128, 128, downsample=False)
    layers += basic_block("layer3_block1", 14, 128, 256, downsample=True)
    layers += basic_block("layer3_block2", 14, 256, 256, downsample=False)
    layers += basic_block("layer4_block1", 7, 256, 512, downsample=True)
    layers += basic_block("layer4_block2", 7, 512, 512, downsample=False)
    layers.append(fc("fc", 512, 1000))
    return layers


def yolo_tiny() -> list[dict]:
    # Tiny YOLOv2 (VOC head: 5 anchors x 25 = 125 output filters), 416 input.
    return [
        conv("conv1", 416, 3, 3, 16),
        conv("conv2", 208, 3, 16, 32),
        conv("conv3", 104, 3, 32, 64),
        conv("conv4", 52, 3, 64, 128),
        conv("conv5", 26, 3, 128, 256),
        conv("conv6", 13, 3, 256, 512),
        conv("conv7", 13, 3, 512, 1024),
        conv("conv8", 13, 3, 1024, 1024),
        conv("conv9", 13, 1, 1024, 125),
    ]


def fasterrcnn() -> list[dict]:
    # VGG-16 backbone at 224 input plus the region-proposal head
    # (3x3 conv and 1x1 cls/reg for 9 anchors).
    layers = [
        conv("conv1_1", 224, 3, 3, 64), conv("conv1_2", 224, 3, 64, 64),
        conv("conv2_1", 112, 3, 64, 128), conv("conv2_2", 112, 3, 128, 128),
        conv("conv3_1", 56, 3, 128, 256), conv("conv3_2", 56, 3, 256, 256),
        conv("conv3_3", 56, 3, 256, 256),
        conv("conv4_1", 28, 3, 256, 512), conv("conv4_2", 28, 3, 512, 512),
        conv("conv4_3", 28, 3, 512, 512),
        conv("conv5_1", 14, 3, 512, 512), conv("conv5_2", 14, 3, 512, 512),
        conv("conv5_3", 14, 3, 512, 512),
        conv("rpn_conv", 14, 3, 512, 512),
        conv("rpn_cls", 14, 1, 512, 18),
        conv("rpn_reg", 14, 1, 512, 36),
    ]
    return layers


NETWORKS = {
    "alexnet": alexnet,
    "mobilenet": mobilenet,
    "fasterrcnn": fasterrcnn,
    "googlenet": googlenet,
    "resnet18": resnet18,
    "yolo_tiny": yolo_tiny,
}


def build_descriptor(name: str, precision_bits: int) -> dict:
    layers = NETWORKS[name]()
    return {
        "name": name,
        "precision_bits": precision_bits,
        "layers": [
            {"name": l["name"],
             "weight_bits": l["weights"] * precision_bits,
             "output_bits": l["outputs"] * precision_bits}
            for l in layers
        ],
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="workloads", help="output directory")
    parser.add_argument("--precision", type=int, default=8,
                        help="bits per weight/activation (default 8)")
    args = parser.parse_args(argv)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in NETWORKS:
        doc = build_descriptor(name, args.precision)
        path = out_dir / f"{name}.json"
        with open(path, "w") as f:
            json.dump(doc, f, indent=2)
            f.write("\n")
        total_w = sum(l["weight_bits"] for l in doc["layers"])
        total_o = sum(l["output_bits"] for l in doc["layers"])
        print(f"{path}: {len(doc['layers'])} layers, "
              f"{total_w} weight bits, {total_o} output bits")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
