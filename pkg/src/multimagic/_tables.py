"""Embedded reference squares (see fixtures for provenance notes)."""

PFEFFERMANN_8 = (
    (56, 34,  8, 57, 18, 47,  9, 31),
    (33, 20, 54, 48,  7, 29, 59, 10),
    (26, 43, 13, 23, 64, 38,  4, 49),
    (19,  5, 35, 30, 53, 12, 46, 60),
    (15, 25, 63,  2, 41, 24, 50, 40),
    ( 6, 55, 17, 11, 36, 58, 32, 45),
    (61, 16, 42, 52, 27,  1, 39, 22),
    (44, 62, 28, 37, 14, 51, 21,  3),
)

ODD_ORDER_9 = (
    ( 1, 35, 60, 23, 48, 79, 18, 40, 65),
    (70, 14, 39, 56,  9, 31, 78, 19, 53),
    (49, 74, 27, 44, 69, 10, 30, 61,  5),
    (38, 72, 13, 33, 55,  8, 52, 77, 21),
    (26, 51, 73, 12, 43, 68,  4, 29, 63),
    (59,  3, 34, 81, 22, 47, 64, 17, 42),
    (75, 25, 50, 67, 11, 45, 62,  6, 28),
    (36, 58,  2, 46, 80, 24, 41, 66, 16),
    (15, 37, 71,  7, 32, 57, 20, 54, 76),
)

ASSOCIATIVE_16 = (
    ( 41, 252,  74, 155, 125, 176,  30, 207, 129,  84, 226,  51, 213,   8, 182, 103),
    ( 62, 239,  93, 144, 106, 187,   9, 220, 150,  71, 245,  40, 194,  19, 161, 116),
    (  3, 210, 100, 177,  87, 134,  56, 229, 171, 122, 204,  25, 255,  46, 160,  77),
    ( 24, 197, 119, 166,  68, 145,  35, 242, 192, 109, 223,  14, 236,  57, 139,  90),
    (240,  61, 143,  94, 188, 105, 219,  10,  72, 149,  39, 246,  20, 193, 115, 162),
    (251,  42, 156,  73, 175, 126, 208,  29,  83, 130,  52, 225,   7, 214, 104, 181),
    (198,  23, 165, 120, 146,  67, 241,  36, 110, 191,  13, 224,  58, 235,  89, 140),
    (209,   4, 178,  99, 133,  88, 230,  55, 121, 172,  26, 203,  45, 256,  78, 159),
    ( 98, 179,   1, 212,  54, 231,  85, 136, 202,  27, 169, 124, 158,  79, 253,  48),
    (117, 168,  22, 199,  33, 244,  66, 147, 221,  16, 190, 111, 137,  92, 234,  59),
    ( 76, 153,  43, 250,  32, 205, 127, 174, 228,  49, 131,  82, 184, 101, 215,   6),
    ( 95, 142,  64, 237,  11, 218, 108, 185, 247,  38, 152,  69, 163, 114, 196,  17),
    (167, 118, 200,  21, 243,  34, 148,  65,  15, 222, 112, 189,  91, 138,  60, 233),
    (180,  97, 211,   2, 232,  53, 135,  86,  28, 201, 123, 170,  80, 157,  47, 254),
    (141,  96, 238,  63, 217,  12, 186, 107,  37, 248,  70, 151, 113, 164,  18, 195),
    (154,  75, 249,  44, 206,  31, 173, 128,  50, 227,  81, 132, 102, 183,   5, 216),
)

PANDIAGONAL_25 = (
    (103, 350, 567, 164, 381, 291, 513, 235, 452,  74, 584, 176, 423,  20, 362, 147, 494,  86, 308, 530, 440,  32, 254, 621, 218),
    (167, 389, 106, 328, 575, 460,  52, 299, 516, 238,  23, 370, 587, 184, 401, 311, 533, 130, 497,  94, 604, 221, 443,  40, 257),
    (331, 553, 175, 392, 114, 524, 241, 463,  60, 277, 187, 409,   1, 373, 595, 480,  97, 319, 536, 133,  43, 265, 607, 204, 446),
    (400, 117, 339, 556, 153,  63, 285, 502, 249, 466, 351, 598, 195, 412,   9, 544, 136, 483,  80, 322, 207, 429,  46, 268, 615),
    (564, 156, 378, 125, 342, 227, 474,  66, 288, 510, 420,  12, 359, 576, 198,  83, 305, 547, 144, 486, 271, 618, 215, 432,  29),
    (134, 476,  98, 320, 537, 447,  44, 261, 608, 205, 115, 332, 554, 171, 393, 278, 525, 242, 464,  56, 591, 188, 410,   2, 374),
    (323, 545, 137, 484,  76, 611, 208, 430,  47, 269, 154, 396, 118, 340, 557, 467,  64, 281, 503, 250,  10, 352, 599, 191, 413),
    (487,  84, 301, 548, 145,  30, 272, 619, 211, 433, 343, 565, 157, 379, 121, 506, 228, 475,  67, 289, 199, 416,  13, 360, 577),
    (526, 148, 495,  87, 309, 219, 436,  33, 255, 622, 382, 104, 346, 568, 165,  75, 292, 514, 231, 453, 363, 585, 177, 424,  16),
    ( 95, 312, 534, 126, 498, 258, 605, 222, 444,  36, 571, 168, 390, 107, 329, 239, 456,  53, 300, 517, 402,  24, 366, 588, 185),
    (290, 507, 229, 471,  68, 578, 200, 417,  14, 356, 141, 488,  85, 302, 549, 434,  26, 273, 620, 212, 122, 344, 561, 158, 380),
    (454,  71, 293, 515, 232,  17, 364, 581, 178, 425, 310, 527, 149, 491,  88, 623, 220, 437,  34, 251, 161, 383, 105, 347, 569),
    (518, 240, 457,  54, 296, 181, 403,  25, 367, 589, 499,  91, 313, 535, 127,  37, 259, 601, 223, 445, 330, 572, 169, 386, 108),
    ( 57, 279, 521, 243, 465, 375, 592, 189, 406,   3, 538, 135, 477,  99, 316, 201, 448,  45, 262, 609, 394, 111, 333, 555, 172),
    (246, 468,  65, 282, 504, 414,   6, 353, 600, 192,  77, 324, 541, 138, 485, 270, 612, 209, 426,  48, 558, 155, 397, 119, 336),
    (441,  38, 260, 602, 224, 109, 326, 573, 170, 387, 297, 519, 236, 458,  55, 590, 182, 404,  21, 368, 128, 500,  92, 314, 531),
    (610, 202, 449,  41, 263, 173, 395, 112, 334, 551, 461,  58, 280, 522, 244,   4, 371, 593, 190, 407, 317, 539, 131, 478, 100),
    ( 49, 266, 613, 210, 427, 337, 559, 151, 398, 120, 505, 247, 469,  61, 283, 193, 415,   7, 354, 596, 481,  78, 325, 542, 139),
    (213, 435,  27, 274, 616, 376, 123, 345, 562, 159,  69, 286, 508, 230, 472, 357, 579, 196, 418,  15, 550, 142, 489,  81, 303),
    (252, 624, 216, 438,  35, 570, 162, 384, 101, 348, 233, 455,  72, 294, 511, 421,  18, 365, 582, 179,  89, 306, 528, 150, 492),
    (597, 194, 411,   8, 355, 140, 482,  79, 321, 543, 428,  50, 267, 614, 206, 116, 338, 560, 152, 399, 284, 501, 248, 470,  62),
    ( 11, 358, 580, 197, 419, 304, 546, 143, 490,  82, 617, 214, 431,  28, 275, 160, 377, 124, 341, 563, 473,  70, 287, 509, 226),
    (180, 422,  19, 361, 583, 493,  90, 307, 529, 146,  31, 253, 625, 217, 439, 349, 566, 163, 385, 102, 512, 234, 451,  73, 295),
    (369, 586, 183, 405,  22, 532, 129, 496,  93, 315, 225, 442,  39, 256, 603, 388, 110, 327, 574, 166,  51, 298, 520, 237, 459),
    (408,   5, 372, 594, 186,  96, 318, 540, 132, 479, 264, 606, 203, 450,  42, 552, 174, 391, 113, 335, 245, 462,  59, 276, 523),
)
