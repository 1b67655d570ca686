# This Python file uses the following encoding: utf-8
import sys

from .sources.config import initConfig
# Init config file, to be done first
initConfig()
from .sources.main import run



def main():

    sys.exit(run())


if __name__=='__main__':
    main()
