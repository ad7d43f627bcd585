"""
If something inherits from Talker, then it can print
progress text to the terminal in a relatively standard way.
"""

import os


class Talker:
    """
    Objects that inherit from Talker have a "mute" attribute,
    a _speak('yo!') method that prints only when unmuted,
    and a _progress_kw dictionary that tells tqdm whether
    its progress bars should be shown.
    """

    # muting can be set for the whole process from the environment
    _mute = os.getenv("REDUCEBENCH_MUTE", "0") not in ["", "0"]

    @property
    def _prefix(self):
        s = f"[{self.__class__.__name__.lower()}] "
        return f"{s:>20}"

    @property
    def _progress_kw(self):
        return dict(disable=self._mute, leave=False)

    def mute(self):
        """Stop printing messages."""
        self._mute = True

    def unmute(self):
        """Start printing messages again."""
        self._mute = False

    def _speak(self, string=""):
        """
        Print to the terminal, unless this object has been muted.

        Parameters
        ----------
        string : str
            The message. Multi-line messages are indented
            to sit underneath the prefix.
        """
        if self._mute == False:
            equalspaces = " " * len(self._prefix)
            print(self._prefix + string.replace("\n", "\n" + equalspaces))
