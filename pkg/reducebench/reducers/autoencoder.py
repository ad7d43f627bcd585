"""
A feed-forward autoencoder, trained by backpropagation,
whose encoder half is used as a dimensionality reducer.

The encoder maps each layer's input through activation(W x + b);
the decoder mirrors it back out to the original width, and training
minimizes the summed squared reconstruction error.
"""

from ..imports import *
from ..records import register_record, check_record
from scipy.special import expit

__all__ = [
    "LayerParams",
    "AutoencoderModel",
    "AeTrainConfig",
    "encode",
    "decode",
    "reconstruction_error",
    "mean_reconstruction_error",
    "autoencoder_gradients",
    "build_autoencoder",
    "train_autoencoder",
    "reduce_with_autoencoder",
]

activations = ["sigmoid", "identity"]


class LayerParams:
    """
    One fully-connected layer: outputs = activation(weights @ inputs + bias).
    """

    def __init__(self, weights, bias, activation="sigmoid"):
        """
        Parameters
        ----------
        weights : array-like
            An (out_dim x in_dim) matrix.
        bias : array-like
            A vector of length out_dim.
        activation : str
            Either 'sigmoid' or 'identity'.
        """
        self.weights = np.array(weights, dtype=float, ndmin=2)
        self.bias = np.array(bias, dtype=float, ndmin=1)
        if activation not in activations:
            raise ValueError(f"activation must be one of {activations}")
        self.activation = activation
        if self.bias.shape != (self.out_dim,):
            raise DimensionMismatch(
                f"bias has shape {self.bias.shape}, expected ({self.out_dim},)"
            )
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
            raise DegenerateInput("layer parameters must be finite")

    def __repr__(self):
        return f"<LayerParams {self.in_dim}->{self.out_dim} ({self.activation})>"

    @property
    def in_dim(self):
        return self.weights.shape[1]

    @property
    def out_dim(self):
        return self.weights.shape[0]

    def forward(self, X):
        """Apply this layer to every row of X."""
        z = X @ self.weights.T + self.bias
        if self.activation == "sigmoid":
            return expit(z)
        return z

    def derivative(self, outputs):
        """The activation's slope, written in terms of its outputs."""
        if self.activation == "sigmoid":
            return outputs * (1 - outputs)
        return np.ones_like(outputs)

    def copy(self):
        return LayerParams(self.weights.copy(), self.bias.copy(), self.activation)

    def to_record(self):
        return dict(
            weights=self.weights.tolist(),
            bias=self.bias.tolist(),
            activation=self.activation,
        )

    @classmethod
    def from_record(cls, record):
        return cls(record["weights"], record["bias"], record["activation"])


@dataclass(frozen=True)
class AeTrainConfig:
    """
    Settings for training an autoencoder with mini-batch gradient
    descent and classical momentum.

    `pretrain` trains the outer and inner layer pairs as shallow
    autoencoders before the whole stack is fine-tuned; without it,
    a small `init_scale` tends to leave the decoder's hidden units
    all learning the same direction.
    """

    epochs: int = 500
    learning_rate: float = 0.05
    momentum: float = 0.9
    batch_size: int = 16
    seed: int = 0
    init_scale: float = 0.1
    pretrain: bool = True

    def validate(self):
        if self.epochs < 1:
            raise ConfigError("autoencoder epochs must be positive")
        if self.learning_rate <= 0:
            raise ConfigError("autoencoder learning_rate must be positive")
        if not (0 <= self.momentum < 1):
            raise ConfigError("autoencoder momentum must be in [0, 1)")
        if self.batch_size < 1:
            raise ConfigError("autoencoder batch_size must be positive")
        if self.init_scale <= 0:
            raise ConfigError("autoencoder init_scale must be positive")
        if not (0 <= int(self.seed) < 2**64):
            raise ConfigError("autoencoder seed must be an unsigned 64-bit integer")
        return self


@register_record("autoencoder")
class AutoencoderModel:
    """
    A trained (or at least built) autoencoder.

    The encoder layers take d-dimensional inputs down to m-dimensional
    codes; the decoder layers are mirror-shaped and bring the codes back
    to d dimensions. `loss_trace` holds the summed reconstruction error
    of the training set after each fine-tuning epoch.
    """

    def __init__(self, encoder_layers, decoder_layers, loss_trace=None):
        self.encoder_layers = list(encoder_layers)
        self.decoder_layers = list(decoder_layers)
        self.loss_trace = list(loss_trace or [])
        self._check_shapes()

    @classmethod
    def from_layers(cls, encoder_layers, decoder_layers):
        """Build a model from explicit layers (mostly for testing)."""
        return cls(encoder_layers, decoder_layers)

    def _check_shapes(self):
        if len(self.encoder_layers) == 0 or len(self.decoder_layers) == 0:
            raise InvalidCodeDim("an autoencoder needs encoder and decoder layers")
        layers = self.layers
        for before, after in zip(layers[:-1], layers[1:]):
            if before.out_dim != after.in_dim:
                raise DimensionMismatch(
                    f"layer widths don't chain: {before} feeds {after}"
                )
        encoder_sizes = [self.input_dim] + [l.out_dim for l in self.encoder_layers]
        decoder_sizes = [self.code_dim] + [l.out_dim for l in self.decoder_layers]
        if decoder_sizes != encoder_sizes[::-1]:
            raise DimensionMismatch(
                f"decoder widths {decoder_sizes} don't mirror encoder widths {encoder_sizes}"
            )

    def __repr__(self):
        sizes = [self.input_dim] + [l.out_dim for l in self.layers]
        return f"<AutoencoderModel {'->'.join(map(str, sizes))}>"

    @property
    def layers(self):
        return self.encoder_layers + self.decoder_layers

    @property
    def input_dim(self):
        return self.encoder_layers[0].in_dim

    @property
    def code_dim(self):
        return self.encoder_layers[-1].out_dim

    def to_record(self):
        return dict(
            kind=self.record_kind,
            version=1,
            input_dim=self.input_dim,
            code_dim=self.code_dim,
            encoder_layers=[l.to_record() for l in self.encoder_layers],
            decoder_layers=[l.to_record() for l in self.decoder_layers],
            loss_trace=[float(x) for x in self.loss_trace],
        )

    @classmethod
    def from_record(cls, record):
        check_record(record, cls.record_kind)
        return cls(
            [LayerParams.from_record(r) for r in record["encoder_layers"]],
            [LayerParams.from_record(r) for r in record["decoder_layers"]],
            loss_trace=record.get("loss_trace"),
        )


def _forward(layers, X):
    """Push a matrix through a stack of layers."""
    for layer in layers:
        X = layer.forward(X)
    return X


def _as_matrix(X, width):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("expected a 2D (n x d) matrix")
    check_width(X, width)
    return X


def encode(model, x):
    """
    Encode one d-dimensional vector into its m-dimensional code.

    Parameters
    ----------
    model : AutoencoderModel
    x : array-like
        A vector of length d.

    Returns
    -------
    code : numpy.ndarray
        A vector of length m.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DimensionMismatch("encode expects a single vector")
    check_width(x, model.input_dim)
    return _forward(model.encoder_layers, x[np.newaxis, :])[0]


def decode(model, code):
    """
    Decode one m-dimensional code back into a d-dimensional vector.
    """
    code = np.asarray(code, dtype=float)
    if code.ndim != 1:
        raise DimensionMismatch("decode expects a single vector")
    check_width(code, model.code_dim, "code")
    return _forward(model.decoder_layers, code[np.newaxis, :])[0]


def reconstruction_error(model, X):
    """
    The summed squared reconstruction error over every row of X.

    Returns
    -------
    error : float
        sum_i ||decode(encode(x_i)) - x_i||^2
    """
    X = _as_matrix(X, model.input_dim)
    residuals = _forward(model.layers, X) - X
    return float(np.sum(residuals**2))


def mean_reconstruction_error(model, X):
    """The reconstruction error per sample (for reporting)."""
    X = _as_matrix(X, model.input_dim)
    if len(X) == 0:
        raise EmptyDataset("no rows to reconstruct")
    return reconstruction_error(model, X) / len(X)


def autoencoder_gradients(model, X):
    """
    Backpropagate the summed reconstruction error through every layer.

    Parameters
    ----------
    model : AutoencoderModel
    X : array-like
        An (n x d) matrix of inputs (which are also the targets).

    Returns
    -------
    gradients : list of (dW, db) tuples
        One per layer, encoder first, matching `model.layers`.
    """
    X = _as_matrix(X, model.input_dim)
    return _layer_gradients(model.layers, X)


def _layer_gradients(layers, X):
    """Gradients of the summed squared error of a layer stack rebuilding X."""
    # remember every layer's outputs on the way forward
    outputs = [X]
    for layer in layers:
        outputs.append(layer.forward(outputs[-1]))

    # walk backward, starting from d(error)/d(reconstruction)
    delta = 2 * (outputs[-1] - X) * layers[-1].derivative(outputs[-1])
    gradients = [None] * len(layers)
    for i in range(len(layers) - 1, -1, -1):
        gradients[i] = (delta.T @ outputs[i], delta.sum(axis=0))
        if i > 0:
            delta = (delta @ layers[i].weights) * layers[i - 1].derivative(outputs[i])
    return gradients


def build_autoencoder(d, m, config=AeTrainConfig()):
    """
    Build the untrained d -> h -> m -> h -> d network, h = ceil((d + m) / 2).

    Every layer is a sigmoid; weights are drawn uniformly from
    [-init_scale, +init_scale] (layer by layer, in order) using the
    seeded generator, and biases start at zero.
    """
    if not (isinstance(m, (int, np.integer)) and 1 <= m <= d):
        raise InvalidCodeDim(f"code dimension must be an integer in [1, {d}], got {m}")
    rng = make_rng(config.seed)
    h = int(math.ceil((d + m) / 2))
    sizes = [d, h, m, h, d]
    layers = []
    for n_in, n_out in zip(sizes[:-1], sizes[1:]):
        weights = rng.uniform(-config.init_scale, config.init_scale, size=(n_out, n_in))
        layers.append(LayerParams(weights, np.zeros(n_out), "sigmoid"))
    return AutoencoderModel(layers[:2], layers[2:])


class AutoencoderTrainer(Talker):
    """
    Trains an autoencoder by mini-batch gradient descent with momentum.

    With `pretrain` on, the outer layer pair (d -> h -> d) is first
    trained as a shallow autoencoder of the inputs, then the inner pair
    (h -> m -> h) as a shallow autoencoder of the outer encoder's hidden
    activations. The stacked network is then fine-tuned as a whole.
    Every stage runs for `epochs` epochs and updates with the gradient
    of the summed squared error over each mini-batch.
    """

    def __init__(self, config=AeTrainConfig(), mute=True):
        self.config = config.validate()
        self._mute = mute

    def _descend(self, layers, X, rng, epochs):
        """
        Fit a stack of layers to reproduce X, in place.

        Returns
        -------
        loss_trace : list of float
            The summed reconstruction error of all of X after each epoch.
        """
        lr, mu = self.config.learning_rate, self.config.momentum
        velocities = [(np.zeros_like(l.weights), np.zeros_like(l.bias)) for l in layers]
        loss_trace = []
        for epoch in tqdm(range(epochs), **self._progress_kw):
            order = rng.permutation(len(X))
            for start in range(0, len(X), self.config.batch_size):
                batch = X[order[start : start + self.config.batch_size]]
                gradients = _layer_gradients(layers, batch)
                for layer, (vw, vb), (gw, gb) in zip(layers, velocities, gradients):
                    vw *= mu
                    vw -= lr * gw
                    vb *= mu
                    vb -= lr * gb
                    layer.weights += vw
                    layer.bias += vb

            loss = float(np.sum((_forward(layers, X) - X) ** 2))
            if not np.isfinite(loss):
                raise NonFiniteLoss(epoch + 1)
            loss_trace.append(loss)
        return loss_trace

    def train(self, X_train, code_dim):
        X = np.asarray(X_train, dtype=float)
        if X.ndim != 2:
            raise DimensionMismatch("training data must be a 2D (n x d) matrix")
        n, d = X.shape
        if n < 2:
            raise DegenerateInput("an autoencoder needs at least two training rows")
        model = build_autoencoder(d, code_dim, self.config)
        outer_in, inner_in, inner_out, outer_out = model.layers
        rng = make_rng(self.config.seed)
        epochs = self.config.epochs

        if self.config.pretrain:
            self._speak(f"pretraining the outer and inner layer pairs of {model}")
            self._descend([outer_in, outer_out], X, rng, epochs)
            hidden = outer_in.forward(X)
            self._descend([inner_in, inner_out], hidden, rng, epochs)

        self._speak(f"training {model} on {n} rows for {epochs} epochs")
        model.loss_trace = self._descend(model.layers, X, rng, epochs)
        self._speak(f"final reconstruction error per sample = {model.loss_trace[-1] / n:.5g}")
        return model


def train_autoencoder(X_train, code_dim, config=AeTrainConfig(), mute=True):
    """
    Train an autoencoder to reproduce X_train through an m-wide bottleneck.

    Parameters
    ----------
    X_train : array-like
        An (n x d) matrix, already scaled into [0, 1].
    code_dim : int
        The bottleneck width m, with 1 <= m <= d.
    config : AeTrainConfig
        Epochs, learning rate, momentum, batch size, seed, init scale,
        and whether to pretrain the layer pairs first.
    mute : bool
        Silence progress messages?

    Returns
    -------
    model : AutoencoderModel
        The parameters after the final epoch, with `loss_trace` filled in.
    """
    return AutoencoderTrainer(config, mute=mute).train(X_train, code_dim)


def reduce_with_autoencoder(model, X):
    """
    Encode every row of X, giving an (n x m) matrix of codes.
    """
    X = _as_matrix(X, model.input_dim)
    return _forward(model.encoder_layers, X)
